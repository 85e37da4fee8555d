//! Seeded generators for valid instances.
//!
//! Every generator draws from one ChaCha8 stream, so a `(kind, r, size,
//! seed)` tuple always produces the same instance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{cyclotomic_field, Monomial, Poly, Ring, Scalar, ScalarField, LAMBDA};
use crate::complexes::{ChainMap, CurvedComplex};
use crate::constructions::{LambdaFamily, RamondData, RemarkFamily, TauData, TwistFamily};
use crate::error::{Error, Result};
use crate::io::{ConeLiftInstance, Instance};
use crate::supermod::{Parity, ParityMap, PolyMatrix, SuperModule};

/// Instance kinds accepted by [`generate`].
pub const KINDS: &[&str] =
    &["lambda-family", "twist-family", "tau-data", "ramond-data", "remark-family", "cone-lift"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn generate(kind: &str, r: u32, size: usize, seed: u64) -> Result<Instance> {
    let mut g = rng(seed);
    match kind {
        "lambda-family" => lambda_family(r, size, &mut g).map(Instance::LambdaFamily),
        "twist-family" => twist_family(r, size, &mut g).map(Instance::TwistFamily),
        "tau-data" => tau_data(r, size, &mut g).map(Instance::TauData),
        "ramond-data" => ramond_data(r, size, &mut g).map(Instance::RamondData),
        "remark-family" => remark_family(r, size, &mut g).map(Instance::RemarkFamily),
        "cone-lift" => cone_lift(size, &mut g).map(Instance::ConeLift),
        _ => Err(Error::InvalidArgument(format!("unknown instance kind `{kind}`; expected one of {KINDS:?}"))),
    }
}

fn check_limits(what: &str, r: u32, r_range: (u32, u32), size: usize, max_size: usize) -> Result<()> {
    if r < r_range.0 || r > r_range.1 {
        return Err(Error::InvalidArgument(format!(
            "{what}: r = {r} outside the supported range {}..={}",
            r_range.0, r_range.1
        )));
    }
    if size > max_size {
        return Err(Error::InvalidArgument(format!("{what}: size {size} exceeds the limit {max_size}")));
    }
    Ok(())
}

fn nonzero<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> i64 {
    let v = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// A sum of `terms` random monomials of total degree `1..=max_deg` in `vars`
/// (degree 0 allowed when `constant`), with small nonzero coefficients.
fn random_poly<R: Rng + ?Sized>(ring: &Ring, vars: &[usize], max_deg: u32, terms: usize, constant: bool, rng: &mut R) -> Poly {
    let mut p = ring.zero();
    for _ in 0..terms {
        let lo = u32::from(!constant);
        let deg = rng.gen_range(lo..=max_deg.max(lo));
        p.add_assign_ref(&random_monomial(ring, vars, deg, rng));
    }
    p
}

fn random_monomial<R: Rng + ?Sized>(ring: &Ring, vars: &[usize], deg: u32, rng: &mut R) -> Poly {
    let mut e = vec![0; ring.nvars()];
    for _ in 0..deg {
        e[vars[rng.gen_range(0..vars.len())]] += 1;
    }
    let c = Scalar::from_int(ring.field(), nonzero(rng, 3));
    Poly::monomial(ring, Monomial::from_exponents(&e), c)
}

/// Random homogeneous polynomial of degree `deg` in `vars`.
fn random_homogeneous<R: Rng + ?Sized>(ring: &Ring, vars: &[usize], deg: u32, terms: usize, rng: &mut R) -> Poly {
    let mut p = ring.zero();
    for _ in 0..terms {
        p.add_assign_ref(&random_monomial(ring, vars, deg, rng));
    }
    p
}

/// Random unitriangular `n × n` matrix with entries drawn by `entry`, and
/// its inverse.
fn unitriangular<R: Rng + ?Sized>(
    ring: &Ring,
    n: usize,
    rng: &mut R,
    mut entry: impl FnMut(&mut R) -> Poly,
) -> Result<(PolyMatrix, PolyMatrix)> {
    let mut t = PolyMatrix::identity(ring, n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.4) {
                t.set(i, j, entry(rng));
            }
        }
    }
    Ok((t.clone(), unitriangular_inverse(&t)?))
}

fn unitriangular_inverse(t: &PolyMatrix) -> Result<PolyMatrix> {
    let n = t.nrows();
    let ring = t.ring();
    let nil = PolyMatrix::identity(ring, n).sub(t)?;
    let mut inv = PolyMatrix::identity(ring, n);
    let mut power = PolyMatrix::identity(ring, n);
    for _ in 1..n {
        power = power.mul(&nil)?;
        inv = inv.add(&power)?;
    }
    Ok(inv)
}

/// `T d T⁻¹` for a random even unitriangular change of basis `T` whose
/// entries are drawn by `entry`.
fn conjugate<R: Rng + ?Sized>(
    d: &ParityMap,
    rng: &mut R,
    mut entry: impl FnMut(&mut R) -> Poly,
) -> Result<(ParityMap, ParityMap, ParityMap)> {
    let m = d.source();
    let ring = d.ring();
    let (te, te_inv) = unitriangular(ring, m.rank(Parity::Even), rng, &mut entry)?;
    let (to, to_inv) = unitriangular(ring, m.rank(Parity::Odd), rng, &mut entry)?;
    let t = ParityMap::new(m, m, Parity::Even, te, to)?;
    let t_inv = ParityMap::new(m, m, Parity::Even, te_inv, to_inv)?;
    Ok((t.compose(&d.compose(&t_inv)?)?, t, t_inv))
}

fn rank_one(ring: &Ring, from_even: Poly, from_odd: Poly) -> Result<ParityMap> {
    let v = SuperModule::with_ranks(ring, 1, 1, "v");
    let m = |p: Poly| PolyMatrix::from_rows(ring, vec![vec![p]], 1);
    ParityMap::new(&v, &v, Parity::Odd, m(from_even)?, m(from_odd)?)
}

fn block_sum(ring: &Ring, blocks: &[ParityMap]) -> Result<ParityMap> {
    let v = SuperModule::zero(ring);
    let mut d = ParityMap::zero(&v, &v, Parity::Odd);
    for b in blocks {
        d = d.direct_sum(b)?;
    }
    let (e, o) = d.source().ranks();
    let v = SuperModule::with_ranks(ring, e, o, "v");
    d.relabel(&v, &v)
}

fn lambda_ring() -> Result<Ring> {
    Ring::new(ScalarField::rationals(), &["x", "y", LAMBDA])
}

/// `λ`-families of rank `(size|size)`. Sizes up to 2 give the elementary
/// Jordan family `a = [[λ, x], [0, λ]]`, `b = Σ_k (-N)^k λ^{r-1-k}`; larger
/// sizes sum Jordan blocks and blocks `(λ^k, λ^{r-k})` and conjugate by
/// random unitriangular changes of basis.
pub fn lambda_family<R: Rng + ?Sized>(r: u32, size: usize, rng: &mut R) -> Result<LambdaFamily> {
    check_limits("lambda-family", r, (2, 8), size, 8)?;
    let ring = lambda_ring()?;
    let base = [ring.var_index("x")?, ring.var_index("y")?];
    let l = ring.var(LAMBDA)?;
    if size == 0 {
        let v = SuperModule::zero(&ring);
        return LambdaFamily::new(ParityMap::zero(&v, &v, Parity::Odd), r);
    }
    let jordan = |m: usize, rng: &mut R, elementary: bool| -> Result<ParityMap> {
        // Layers make N^r = 0: entries only go to strictly later layers.
        let layer = |i: usize| i * r as usize / m;
        let mut n = PolyMatrix::zeros(&ring, m, m);
        for i in 0..m {
            for j in i + 1..m {
                if layer(j) > layer(i) {
                    let p = if elementary { ring.var_at(base[0]) } else { random_poly(&ring, &base, 1, 2, true, rng) };
                    n.set(i, j, p);
                }
            }
        }
        let a = PolyMatrix::identity(&ring, m).scale(&l).add(&n)?;
        let mut b = PolyMatrix::zeros(&ring, m, m);
        let mut power = PolyMatrix::identity(&ring, m);
        for k in 0..r {
            b = b.add(&power.scale(&l.pow(r - 1 - k)))?;
            power = power.mul(&n.neg())?;
        }
        let v = SuperModule::with_ranks(&ring, m, m, "v");
        ParityMap::new(&v, &v, Parity::Odd, a, b)
    };
    if size <= 2 {
        return LambdaFamily::new(jordan(size, rng, true)?, r);
    }
    let mut blocks = Vec::new();
    let mut left = size;
    while left > 0 {
        if rng.gen_bool(0.5) {
            let m = rng.gen_range(1..=left.min(4));
            blocks.push(jordan(m, rng, false)?);
            left -= m;
        } else {
            let k = rng.gen_range(1..r);
            blocks.push(rank_one(&ring, l.pow(k), l.pow(r - k))?);
            left -= 1;
        }
    }
    let d = block_sum(&ring, &blocks)?;
    let (d, _, _) = conjugate(&d, rng, |g| random_poly(&ring, &base, 1, 1, true, g))?;
    LambdaFamily::new(d, r)
}

/// `d` with `d² = -(f_1⋯f_r)` on `(2^k|2^k)` for `k = size`: an elementary
/// factorization `(-f_S, f_{S^c})` tensored with `size - 1` Koszul complexes
/// of random polynomials, then conjugated. Size 0 gives `V = 0`.
pub fn twist_family<R: Rng + ?Sized>(r: u32, size: usize, rng: &mut R) -> Result<TwistFamily> {
    check_limits("twist-family", r, (1, 6), size, 4)?;
    let ring = Ring::new(ScalarField::rationals(), &["x", "y", "z", "w"])?;
    let vars: Vec<usize> = (0..ring.nvars()).collect();
    let fs: Vec<Poly> = (0..r).map(|_| random_homogeneous(&ring, &vars, 1, 2, rng)).collect();
    if size == 0 {
        let v = SuperModule::zero(&ring);
        return TwistFamily::new(ParityMap::zero(&v, &v, Parity::Odd), fs);
    }
    let mut first = ring.int(-1);
    let mut second = ring.one();
    for f in &fs {
        if rng.gen_bool(0.5) {
            first = &first * f;
        } else {
            second = &second * f;
        }
    }
    let mut c = CurvedComplex::new(rank_one(&ring, first, second)?)?;
    for _ in 1..size {
        let g = random_poly(&ring, &vars, 2, 2, true, rng);
        c = c.tensor(&CurvedComplex::new(rank_one(&ring, g, ring.zero())?)?)?;
    }
    let (d, _, _) = conjugate(c.differential(), rng, |g| random_poly(&ring, &vars, 1, 1, true, g))?;
    TwistFamily::new(d, fs)
}

/// Random syzygy moves `N_i += g ψ_j`, `N_j -= g ψ_i` keeping `Σ N_b ψ_b`.
fn add_syzygies<R: Rng + ?Sized>(ring: &Ring, fiber: &[usize], deg: u32, psi: &[Poly], n: &mut [Poly], count: usize, rng: &mut R) {
    if psi.len() < 2 {
        return;
    }
    for _ in 0..count {
        let i = rng.gen_range(0..psi.len());
        let mut j = rng.gen_range(0..psi.len() - 1);
        if j >= i {
            j += 1;
        }
        let g = random_homogeneous(ring, fiber, deg, 2, rng);
        n[i] = &n[i] + &(&g * &psi[j]);
        n[j] = &n[j] - &(&g * &psi[i]);
    }
}

/// `ψ ↦ Bψ`, `N ↦ B^{-T}N` for a random unitriangular integer `B`.
fn change_c1<R: Rng + ?Sized>(ring: &Ring, psi: &mut Vec<Poly>, n: &mut Vec<Poly>, rng: &mut R) -> Result<()> {
    let k = psi.len();
    let (b, b_inv) = unitriangular(ring, k, rng, |g| ring.int(nonzero(g, 2)))?;
    let apply = |m: &PolyMatrix, v: &[Poly]| -> Vec<Poly> {
        (0..k)
            .map(|i| {
                let mut acc = ring.zero();
                for (j, vj) in v.iter().enumerate() {
                    acc.add_mul_assign(m.get(i, j), vj);
                }
                acc
            })
            .collect()
    };
    *psi = apply(&b, psi);
    *n = apply(&b_inv.transpose(), n);
    Ok(())
}

/// Substitute `x ↦ A x + shift` in every polynomial, with `A` unitriangular
/// and `shift` a list of additional terms per coordinate.
fn substitute_all(polys: &mut [Poly], coords: &[usize], images: &[Poly]) -> Result<()> {
    for p in polys.iter_mut() {
        // Simultaneous substitution through fresh evaluation.
        let mut out = p.ring().zero();
        for (m, c) in p.terms() {
            let mut term = Poly::monomial(p.ring(), strip(m, coords), c.clone());
            for (k, &v) in coords.iter().enumerate() {
                term = &term * &images[k].pow(m.exponents()[v]);
            }
            out.add_assign_ref(&term);
        }
        *p = out;
    }
    Ok(())
}

fn strip(m: &Monomial, vars: &[usize]) -> Monomial {
    let mut e = m.exponents().to_vec();
    for &v in vars {
        e[v] = 0;
    }
    Monomial::from_exponents(&e)
}

/// Linear images `x_a ↦ Σ_b A_{ab} x_b (+ w_a λ)` of the coordinates.
fn random_coordinate_change<R: Rng + ?Sized>(ring: &Ring, coords: &[usize], lambda: Option<usize>, rng: &mut R) -> Result<Vec<Poly>> {
    let (a, _) = unitriangular(ring, coords.len(), rng, |g| ring.int(nonzero(g, 2)))?;
    Ok((0..coords.len())
        .map(|i| {
            let mut img = ring.zero();
            for (j, &v) in coords.iter().enumerate() {
                img.add_mul_assign(a.get(i, j), &ring.var_at(v));
            }
            if let Some(l) = lambda {
                if rng.gen_bool(0.5) {
                    img.add_assign_ref(&ring.var_at(l).scalar_mul(&Scalar::from_int(ring.field(), nonzero(rng, 2))));
                }
            }
            img
        })
        .collect())
}

fn linear_matrix(ring: &Ring, psi: &[Poly], fiber: &[usize]) -> Result<PolyMatrix> {
    let rows = psi
        .iter()
        .map(|p| {
            fiber
                .iter()
                .map(|&v| {
                    let mut e = vec![0; ring.nvars()];
                    e[v] = 1;
                    let m = Monomial::from_exponents(&e);
                    p.terms().find(|(t, _)| **t == m).map_or(ring.zero(), |(_, c)| ring.constant(c.clone()))
                })
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(ring, rows, fiber.len())
}

/// Split data with `⟨ν((x + λ1)^{r-1}), d̃(x + λ1)⟩ = λ^r`. Size 0 is the
/// rank-one instance `d̃(x̂) = 0`, `d̃(1) = e`, `ν = λ^{r-1}e*`; size `s`
/// has `C₀` of rank `s + 1` and `C₁` of rank `s + 1`.
pub fn tau_data<R: Rng + ?Sized>(r: u32, size: usize, rng: &mut R) -> Result<TauData> {
    check_limits("tau-data", r, (2, 6), size, 3)?;
    let n0 = size + 1;
    let coord = |i: usize| if size == 0 { "xh".to_string() } else { format!("x{i}") };
    let names: Vec<String> = (0..n0).map(coord).chain([LAMBDA.to_string()]).collect();
    let ring = Ring::new(ScalarField::rationals(), &names)?;
    let coords: Vec<usize> = (0..n0).collect();
    let lambda = n0;
    let fiber: Vec<usize> = (0..=n0).collect();
    let l = ring.var_at(lambda);
    let mut psi = vec![l.clone()];
    let mut n = vec![l.pow(r - 1)];
    for _ in 0..size {
        psi.push(random_homogeneous(&ring, &coords, 1, 2, rng));
        n.push(ring.zero());
    }
    if size > 0 {
        add_syzygies(&ring, &fiber, r - 2, &psi, &mut n, size + 1, rng);
        let images = random_coordinate_change(&ring, &coords, Some(lambda), rng)?;
        substitute_all(&mut psi, &coords, &images)?;
        substitute_all(&mut n, &coords, &images)?;
        change_c1(&ring, &mut psi, &mut n, rng)?;
    }
    let d = linear_matrix(&ring, &psi, &fiber)?;
    let coord_names: Vec<&str> = names[..n0].iter().map(String::as_str).collect();
    TauData::from_polys(&ring, &coord_names, r, d, &n)
}

/// Data with `⟨ν(x^{r-1}), d(x)⟩ = -(e₁^r - e₂^r)` over `Q(ζ_r)`. Size 0 is
/// the empty instance; size `s` has `C₀` of rank `s + 1` and `C₁` of rank
/// `s`.
pub fn ramond_data<R: Rng + ?Sized>(r: u32, size: usize, rng: &mut R) -> Result<RamondData> {
    check_limits("ramond-data", r, (2, 12), size, 3)?;
    let field = cyclotomic_field(r)?;
    let n0 = if size == 0 { 0 } else { size + 1 };
    let names: Vec<String> = (0..n0.max(1)).map(|i| format!("x{i}")).collect();
    let ring = Ring::new(field, &names)?;
    let coords: Vec<usize> = (0..n0).collect();
    let coord_names: Vec<&str> = names[..n0].iter().map(String::as_str).collect();
    if size == 0 {
        let d = PolyMatrix::zeros(&ring, 0, 0);
        let nu = PolyMatrix::zeros(&ring, 0, crate::constructions::exponent_vectors(0, r - 1).len());
        return RamondData::new(&ring, &coord_names, r, d, nu, vec![], vec![]);
    }
    let mut e = vec![random_homogeneous(&ring, &coords, 1, 2, rng), random_homogeneous(&ring, &coords, 1, 2, rng)];
    let mut psi = vec![&e[0] - &e[1]];
    let mut cof = ring.zero();
    for i in 0..r {
        cof.add_assign_ref(&(&e[0].pow(i) * &e[1].pow(r - 1 - i)));
    }
    let mut n = vec![-&cof];
    for _ in 1..size {
        psi.push(random_homogeneous(&ring, &coords, 1, 2, rng));
        n.push(ring.zero());
    }
    add_syzygies(&ring, &coords, r - 2, &psi, &mut n, size, rng);
    let images = random_coordinate_change(&ring, &coords, None, rng)?;
    substitute_all(&mut psi, &coords, &images)?;
    substitute_all(&mut n, &coords, &images)?;
    substitute_all(&mut e, &coords, &images)?;
    change_c1(&ring, &mut psi, &mut n, rng)?;
    let d = linear_matrix(&ring, &psi, &coords)?;
    let coeffs = |p: &Poly| linear_matrix(&ring, std::slice::from_ref(p), &coords).map(|m| m.rows().remove(0));
    let (e1, e2) = (coeffs(&e[0])?, coeffs(&e[1])?);
    RamondData::from_polys(&ring, &coord_names, r, d, &n, e1, e2)
}

/// `d(λ)` with `d(λ)² = f(λ)` for `f = ∏(λ - z_i)` with distinct roots, as a
/// sum of `(∏_{S}(λ - z), ∏_{S^c}(λ - z))` blocks, conjugated. Roots are
/// integers or integer multiples of `x`.
pub fn remark_family<R: Rng + ?Sized>(r: u32, size: usize, rng: &mut R) -> Result<RemarkFamily> {
    check_limits("remark-family", r, (2, 6), size, 6)?;
    let ring = lambda_ring()?;
    let l = ring.var(LAMBDA)?;
    let x = ring.var("x")?;
    let polynomial_roots = rng.gen_bool(0.5);
    let mut roots: Vec<Poly> = Vec::new();
    while roots.len() < r as usize {
        let k = rng.gen_range(-4..=4);
        let z = if polynomial_roots { x.scalar_mul(&Scalar::from_int(ring.field(), k)) } else { ring.int(k) };
        if !roots.contains(&z) {
            roots.push(z);
        }
    }
    let f = roots.iter().fold(ring.one(), |acc, z| &acc * &(&l - z));
    let mut blocks = Vec::new();
    for _ in 0..size {
        let split = rng.gen_range(1..r as usize);
        let mut idx: Vec<usize> = (0..r as usize).collect();
        for i in (1..idx.len()).rev() {
            idx.swap(i, rng.gen_range(0..=i));
        }
        let prod = |s: &[usize]| s.iter().fold(ring.one(), |acc, &i| &acc * &(&l - &roots[i]));
        blocks.push(rank_one(&ring, prod(&idx[..split]), prod(&idx[split..]))?);
    }
    let d = block_sum(&ring, &blocks)?;
    let base = [ring.var_index("x")?, ring.var_index("y")?];
    let (d, _, _) = conjugate(&d, rng, |g| random_poly(&ring, &base, 1, 1, true, g))?;
    RemarkFamily::new(d, f, Some(roots))
}

/// Random curved complex on `(2^{k-1}|2^{k-1})`: Koszul complexes of random
/// polynomials tensored, with curvature `w` from a factorization `(x, w/x)`.
fn random_complex<R: Rng + ?Sized>(ring: &Ring, k: usize, curved: bool, rng: &mut R) -> Result<CurvedComplex> {
    let vars: Vec<usize> = (0..ring.nvars()).collect();
    let mut c = if curved {
        CurvedComplex::new(rank_one(ring, ring.var_at(0), ring.var_at(1))?)?
    } else {
        CurvedComplex::new(rank_one(ring, random_poly(ring, &vars, 1, 2, true, rng), ring.zero())?)?
    };
    for _ in 1..k {
        let g = random_poly(ring, &vars, 1, 2, true, rng);
        c = c.tensor(&CurvedComplex::new(rank_one(ring, g, ring.zero())?)?)?;
    }
    Ok(c)
}

fn random_map<R: Rng + ?Sized>(source: &SuperModule, target: &SuperModule, parity: Parity, rng: &mut R) -> Result<ParityMap> {
    let ring = source.ring();
    let vars: Vec<usize> = (0..ring.nvars()).collect();
    let mut f = ParityMap::zero(source, target, parity);
    for (i, j) in f.positions() {
        if rng.gen_bool(0.5) {
            f.set_entry(i, j, random_poly(ring, &vars, 1, 1, true, rng))?;
        }
    }
    Ok(f)
}

/// `g: A → B = A ⊕ C` the inclusion, `f = (κ, id): B → C` with
/// `κ = d_C m + m d_A`, so `m` is a homotopy from `f∘g` to zero; the second
/// homotopy adds `d_C n - n d_A`. `B` is then conjugated.
pub fn cone_lift<R: Rng + ?Sized>(size: usize, rng: &mut R) -> Result<ConeLiftInstance> {
    check_limits("cone-lift", 0, (0, 0), size, 3)?;
    let ring = Ring::new(ScalarField::rationals(), &["x", "y", "z"])?;
    let curved = rng.gen_bool(0.5);
    let k = size.max(1);
    let a = random_complex(&ring, rng.gen_range(1..=k), curved, rng)?;
    let c = random_complex(&ring, rng.gen_range(1..=k), curved, rng)?;
    let (da, dc) = (a.differential(), c.differential());
    let m = random_map(a.module(), c.module(), Parity::Odd, rng)?;
    let n = random_map(a.module(), c.module(), Parity::Even, rng)?;
    let kappa = dc.compose(&m)?.add(&m.compose(da)?)?;
    let h2 = m.add(&dc.compose(&n)?.sub(&n.compose(da)?)?)?;
    let parts = [a.module().clone(), c.module().clone()];
    let b = CurvedComplex::direct_sum_all(&[a.clone(), c.clone()])?;
    debug_assert_eq!(b.module(), &SuperModule::direct_sum_all(&parts)?);
    let g = ParityMap::block_grid(
        &[a.module().clone()],
        &parts,
        Parity::Even,
        &[vec![Some(ParityMap::identity(a.module()))], vec![None]],
    )?;
    let f = ParityMap::block_grid(
        &parts,
        &[c.module().clone()],
        Parity::Even,
        &[vec![Some(kappa), Some(ParityMap::identity(c.module()))]],
    )?;
    let vars: Vec<usize> = (0..ring.nvars()).collect();
    let (db, t, t_inv) = conjugate(b.differential(), rng, |g| random_poly(&ring, &vars, 1, 1, true, g))?;
    let b = CurvedComplex::new(db)?;
    let g = ChainMap::new(&a, &b, t.compose(&g)?)?;
    let f = ChainMap::new(&b, &c, f.compose(&t_inv)?)?;
    Ok(ConeLiftInstance { g, f, h: m, h2: Some(h2) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_lambda_family() {
        let fam = lambda_family(2, 2, &mut rng(1)).unwrap();
        let d = fam.differential();
        assert_eq!(d.block(Parity::Even).get(0, 1).to_string(), "x");
        assert_eq!(d.block(Parity::Odd).get(0, 1).to_string(), "-x");
        assert_eq!(d.block(Parity::Odd).get(0, 0).to_string(), "lambda");
    }

    #[test]
    fn all_kinds_generate() {
        for kind in KINDS {
            for size in 0..=2 {
                for seed in 0..3 {
                    let r = if *kind == "cone-lift" { 0 } else { 3 };
                    generate(kind, r, size, seed).unwrap_or_else(|e| panic!("{kind} size {size} seed {seed}: {e}"));
                }
            }
        }
    }

    #[test]
    fn determinism() {
        let a = generate("twist-family", 3, 2, 7).unwrap().to_json(Some(7), Some(2)).unwrap();
        let b = generate("twist-family", 3, 2, 7).unwrap().to_json(Some(7), Some(2)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn limits() {
        assert!(generate("lambda-family", 2, 9, 0).is_err());
        assert!(generate("lambda-family", 1, 1, 0).is_err());
        assert!(generate("nonsense", 2, 1, 0).is_err());
    }
}
