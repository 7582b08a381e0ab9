//! Homological algebra over finite-dimensional algebras: hom spaces,
//! kernels and cokernels, direct-sum decomposition with certificates,
//! projective covers and resolutions, Ext dimensions, and homological
//! dimensions (injective dimensions via duality).
//!
//! Decomposition and everything built on it (projective covers, global
//! dimension) requires a prime field; the other operations are
//! field-agnostic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Module, ModuleMap, Side};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{EchelonSpan, Matrix};
use crate::poly::minimal_polynomial;

/// Basis of the space of module maps x -> y. The intertwining constraints
/// are imposed only for the algebra generators (which is complete), and the
/// kernel is intersected generator by generator to keep intermediates small.
pub fn hom_basis(x: &Module, y: &Module) -> Result<Vec<ModuleMap>> {
    if x.algebra() != y.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let f = x.field();
    let (dx, dy) = (x.dim(), y.dim());
    if dx == 0 || dy == 0 {
        return Ok(vec![]);
    }
    let mut k = Matrix::identity(f, dx * dy);
    for &g in &x.algebra().generators().gen_indices {
        if k.cols() == 0 {
            break;
        }
        let cols: Vec<Matrix> = (0..k.cols())
            .map(|c| {
                let phi = Matrix::unvec(f, dy, dx, &k.column(c));
                let comm = y
                    .action(g)
                    .mul(&phi)
                    .unwrap()
                    .sub(&phi.mul(x.action(g)).unwrap())
                    .unwrap();
                comm.vec()
            })
            .collect();
        let refs: Vec<&Matrix> = cols.iter().collect();
        let b = Matrix::hstack(f, dx * dy, &refs);
        k = k.mul(&b.kernel_basis()).unwrap();
    }
    Ok((0..k.cols())
        .map(|c| {
            let m = Matrix::unvec(f, dy, dx, &k.column(c));
            ModuleMap::new_unchecked(x.clone(), y.clone(), m)
        })
        .collect())
}

pub fn hom_dim(x: &Module, y: &Module) -> Result<usize> {
    Ok(hom_basis(x, y)?.len())
}

/// Kernel as an abstract module with its inclusion into the source.
pub fn kernel(f: &ModuleMap) -> Result<(Module, ModuleMap)> {
    f.source().submodule(&f.matrix().kernel_basis())
}

/// Image as an abstract module with its inclusion into the target.
pub fn image(f: &ModuleMap) -> Result<(Module, ModuleMap)> {
    f.target().submodule(&f.matrix().column_space_basis())
}

/// Cokernel as an abstract module with the projection from the target.
pub fn cokernel(f: &ModuleMap) -> Result<(Module, ModuleMap)> {
    f.target().quotient(&f.matrix().column_space_basis())
}

/// Coordinates of `items` in a basis of matrices (all the same shape):
/// column j holds the coefficients of items[j].
fn coords_in_basis(field: Field, basis: &[Matrix], items: &[Matrix]) -> Result<Matrix> {
    let (r, c) = basis
        .first()
        .or(items.first())
        .map(|m| (m.rows(), m.cols()))
        .unwrap_or((0, 0));
    let vecs: Vec<Matrix> = basis.iter().map(|m| m.vec()).collect();
    let refs: Vec<&Matrix> = vecs.iter().collect();
    let span = Matrix::hstack(field, r * c, &refs);
    let ivecs: Vec<Matrix> = items.iter().map(|m| m.vec()).collect();
    let irefs: Vec<&Matrix> = ivecs.iter().collect();
    let rhs = Matrix::hstack(field, r * c, &irefs);
    span.solve(&rhs)?
        .ok_or_else(|| Error::Internal("matrix outside its supposed span".into()))
}

/// The endomorphism algebra of x with composition as product (f*g = f o g),
/// together with the basis maps realizing each basis element.
pub fn endo_algebra(x: &Module) -> Result<(Algebra, Vec<ModuleMap>)> {
    let basis = hom_basis(x, x)?;
    endo_algebra_from_basis(x, basis)
}

fn endo_algebra_from_basis(x: &Module, basis: Vec<ModuleMap>) -> Result<(Algebra, Vec<ModuleMap>)> {
    let f = x.field();
    let n = basis.len();
    if n == 0 {
        return Err(Error::InvalidModule(
            "endomorphism algebra of the zero module".into(),
        ));
    }
    let mats: Vec<Matrix> = basis.iter().map(|b| b.matrix().clone()).collect();
    let mut mult = vec![vec![vec![f.zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod = mats[i].mul(&mats[j]).unwrap();
            let coords = coords_in_basis(f, &mats, std::slice::from_ref(&prod))?;
            for k in 0..n {
                mult[i][j][k] = coords.get(k, 0).clone();
            }
        }
    }
    let unit = coords_in_basis(f, &mats, std::slice::from_ref(&Matrix::identity(f, x.dim())))?;
    let a = Algebra::new_unchecked(f, n, unit, mult)?;
    Ok((a, basis))
}

const SPLIT_RANDOM_BUDGET: usize = 64;
const NONCOMMUTATIVE_BUDGET: usize = 4096;

/// Attempts one nontrivial direct-sum split of x from an endomorphism with
/// non-primary minimal polynomial: the coprime factors cut x into the two
/// generalized kernels.
fn split_from_endo(x: &Module, f_mat: &Matrix) -> Result<Option<(Matrix, Matrix)>> {
    let mu = minimal_polynomial(f_mat)?;
    let sf = mu.squarefree_part();
    let Some((u, v)) = sf.coprime_split() else {
        return Ok(None);
    };
    let n = x.dim() as u64;
    let pu = u.eval_matrix(f_mat).pow(n);
    let pv = v.eval_matrix(f_mat).pow(n);
    let ubasis = pu.kernel_basis();
    let vbasis = pv.kernel_basis();
    if ubasis.cols() == 0 || vbasis.cols() == 0 || ubasis.cols() + vbasis.cols() != x.dim() {
        return Err(Error::Internal("coprime factors did not split the space".into()));
    }
    Ok(Some((ubasis, vbasis)))
}

fn random_combination(rng: &mut ChaCha8Rng, mats: &[Matrix], p: u64, dim: usize) -> Matrix {
    let f = mats[0].field();
    let mut acc = Matrix::zero(f, dim, dim);
    for m in mats {
        let c = rng.gen_range(0..p);
        if c != 0 {
            acc = acc.add(&m.scale(&Scalar::Fp(c))).unwrap();
        }
    }
    acc
}

/// Either finds a split of x or rigorously certifies indecomposability.
/// Requires the endomorphism matrices to span End(x).
fn try_split(x: &Module, endo_mats: &[Matrix], seed: u64) -> Result<Option<(Matrix, Matrix)>> {
    let p = match x.field() {
        Field::Prime(p) => p,
        Field::Rational => {
            return Err(Error::Unsupported(
                "direct-sum decomposition requires a prime field".into(),
            ))
        }
    };
    for m in endo_mats {
        if let Some(split) = split_from_endo(x, m)? {
            return Ok(Some(split));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SPLIT_RANDOM_BUDGET {
        let m = random_combination(&mut rng, endo_mats, p, x.dim());
        if m.is_zero() {
            continue;
        }
        if let Some(split) = split_from_endo(x, &m)? {
            return Ok(Some(split));
        }
    }
    // Certification route through the semisimple quotient of End(x).
    let basis_maps: Vec<ModuleMap> = endo_mats
        .iter()
        .map(|m| ModuleMap::new_unchecked(x.clone(), x.clone(), m.clone()))
        .collect();
    let (e_alg, _) = endo_algebra_from_basis(x, basis_maps)?;
    let rad = e_alg.radical()?.clone();
    let (quot, proj, sect) = if rad.cols() == 0 {
        let n = e_alg.dim();
        (e_alg.clone(), Matrix::identity(x.field(), n), Matrix::identity(x.field(), n))
    } else {
        e_alg.quotient_by_ideal(&rad)?
    };
    let _ = proj;
    let q = quot.dim();
    let commutative = (0..q).all(|i| {
        (0..q).all(|j| {
            quot.product(&quot.basis_element(i), &quot.basis_element(j))
                == quot.product(&quot.basis_element(j), &quot.basis_element(i))
        })
    });
    if commutative {
        // number of simple factors = fixed space of the Frobenius
        let fld = x.field();
        let frob_cols: Vec<Matrix> = (0..q)
            .map(|i| {
                // basis_element^p via square-and-multiply in the quotient
                let mut acc = quot.unit().clone();
                let mut base = quot.basis_element(i);
                let mut e = p;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = quot.product(&acc, &base);
                    }
                    e >>= 1;
                    if e > 0 {
                        base = quot.product(&base, &base);
                    }
                }
                acc
            })
            .collect();
        let refs: Vec<&Matrix> = frob_cols.iter().collect();
        let frob = Matrix::hstack(fld, q, &refs);
        let fixed = frob.sub(&Matrix::identity(fld, q)).unwrap().kernel_basis();
        if fixed.cols() <= 1 {
            // local endomorphism algebra: indecomposable, certified
            return Ok(None);
        }
        // a non-scalar fixed element has squarefree split minimal polynomial;
        // its lift must therefore split x
        for c in 0..fixed.cols() {
            let lifted = sect.mul(&fixed.column(c)).unwrap(); // End coords
            let mut f_mat = Matrix::zero(fld, x.dim(), x.dim());
            for (i, m) in endo_mats.iter().enumerate() {
                let co = lifted.get(i, 0);
                if !fld.is_zero(co) {
                    f_mat = f_mat.add(&m.scale(co)).unwrap();
                }
            }
            if let Some(split) = split_from_endo(x, &f_mat)? {
                return Ok(Some(split));
            }
        }
        Err(Error::Internal(
            "Frobenius-fixed space promised a split that did not materialize".into(),
        ))
    } else {
        // noncommutative semisimple quotient: x is decomposable; search until
        // a splitting endomorphism shows up
        for _ in 0..NONCOMMUTATIVE_BUDGET {
            let m = random_combination(&mut rng, endo_mats, p, x.dim());
            if m.is_zero() {
                continue;
            }
            if let Some(split) = split_from_endo(x, &m)? {
                return Ok(Some(split));
            }
        }
        Err(Error::Internal(
            "decomposable module resisted the splitting budget".into(),
        ))
    }
}

/// Indecomposable summands with their embedding bases (columns in the
/// coordinates of x; the horizontal stack of all embeddings is invertible).
/// Deterministic for a fixed seed. Prime fields only.
pub fn split_indecomposable(x: &Module, seed: u64) -> Result<Vec<(Module, Matrix)>> {
    let endo_mats: Vec<Matrix> = hom_basis(x, x)?
        .into_iter()
        .map(|m| m.matrix().clone())
        .collect();
    split_with_endos(x, &endo_mats, seed)
}

fn split_with_endos(x: &Module, endo_mats: &[Matrix], seed: u64) -> Result<Vec<(Module, Matrix)>> {
    if x.dim() == 0 {
        return Ok(vec![]);
    }
    match try_split(x, endo_mats, seed)? {
        None => Ok(vec![(x.clone(), Matrix::identity(x.field(), x.dim()))]),
        Some((ubasis, vbasis)) => {
            // transport the endomorphisms to each summand instead of
            // recomputing hom spaces: with e the idempotent of the summand,
            // e End(x) e spans the full endomorphism algebra of the summand
            let f = x.field();
            let full = Matrix::hstack(f, x.dim(), &[&ubasis, &vbasis]);
            let inv = full
                .inverse()
                .ok_or_else(|| Error::Internal("split bases do not span".into()))?;
            let mut out = Vec::new();
            let mut off = 0;
            for basis in [ubasis, vbasis] {
                let d = basis.cols();
                let proj = inv.submatrix(off..off + d, 0..x.dim());
                off += d;
                let (sub, _inc) = x.submodule(&basis)?;
                let transported: Vec<Matrix> = endo_mats
                    .iter()
                    .map(|m| proj.mul(m).unwrap().mul(&basis).unwrap())
                    .collect();
                let sub_endos = independent_subset(f, d, transported);
                for (m, emb) in split_with_endos(&sub, &sub_endos, seed)? {
                    out.push((m, basis.mul(&emb).unwrap()));
                }
            }
            Ok(out)
        }
    }
}

/// Maximal linearly independent subset, by echelon insertion of the
/// flattened matrices.
fn independent_subset(f: Field, dim: usize, mats: Vec<Matrix>) -> Vec<Matrix> {
    let mut span = EchelonSpan::new(f, dim * dim);
    mats.into_iter().filter(|m| span.insert(&m.vec())).collect()
}

/// Isomorphism test for modules already known to be indecomposable over a
/// prime field. Rigorous in both directions: some composite of hom-basis
/// elements lies outside rad End(x) iff a split (hence iso) exists.
fn indec_isomorphic(x: &Module, y: &Module) -> Result<bool> {
    if x.dim() != y.dim() {
        return Ok(false);
    }
    if x.dim() == 0 {
        return Ok(true);
    }
    let to = hom_basis(x, y)?;
    let back = hom_basis(y, x)?;
    if to.is_empty() || back.is_empty() {
        return Ok(false);
    }
    let (e_alg, e_basis) = endo_algebra(x)?;
    let rad = e_alg.radical()?;
    let f = x.field();
    let mut rad_span = EchelonSpan::new(f, e_alg.dim());
    for c in 0..rad.cols() {
        rad_span.insert(&rad.column(c));
    }
    let e_mats: Vec<Matrix> = e_basis.iter().map(|m| m.matrix().clone()).collect();
    for h in &back {
        for g in &to {
            let comp = h.matrix().mul(g.matrix()).unwrap();
            let coords = coords_in_basis(f, &e_mats, std::slice::from_ref(&comp))?;
            if !rad_span.contains(&coords) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Indecomposable summands grouped with multiplicities (summands pairwise
/// non-isomorphic). Prime fields only; deterministic for a fixed seed.
pub fn decompose(x: &Module, seed: u64) -> Result<Vec<(Module, usize)>> {
    let parts = split_indecomposable(x, seed)?;
    group_by_iso(parts.into_iter().map(|(m, _)| m))
}

fn group_by_iso(parts: impl Iterator<Item = Module>) -> Result<Vec<(Module, usize)>> {
    let mut grouped: Vec<(Module, usize)> = Vec::new();
    for m in parts {
        let mut placed = false;
        for (rep, count) in grouped.iter_mut() {
            if indec_isomorphic(rep, &m)? {
                *count += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            grouped.push((m, 1));
        }
    }
    Ok(grouped)
}

pub fn is_indecomposable(x: &Module, seed: u64) -> Result<bool> {
    if x.dim() == 0 {
        return Ok(false);
    }
    Ok(split_indecomposable(x, seed)?.len() == 1)
}

/// Isomorphism test. Over a prime field the answer is always definite
/// (decompose both sides and match summands). Over the rationals a random
/// search may fail to decide, reported as None.
pub fn are_isomorphic(x: &Module, y: &Module, seed: u64) -> Result<Option<bool>> {
    if x.algebra() != y.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if x.dim() != y.dim() {
        return Ok(Some(false));
    }
    if x.dim() == 0 {
        return Ok(Some(true));
    }
    match x.field() {
        Field::Prime(_) => {
            let mut xs = decompose(x, seed)?;
            let ys = decompose(y, seed)?;
            if xs.len() != ys.len() {
                return Ok(Some(false));
            }
            for (ym, ycount) in ys {
                let mut found = false;
                for (xm, xcount) in xs.iter_mut() {
                    if *xcount == ycount && indec_isomorphic(xm, &ym)? {
                        *xcount = 0; // consumed
                        found = true;
                        break;
                    }
                }
                if !found {
                    return Ok(Some(false));
                }
            }
            Ok(Some(true))
        }
        Field::Rational => {
            let basis = hom_basis(x, y)?;
            if basis.is_empty() {
                return Ok(Some(false));
            }
            for b in &basis {
                if b.is_isomorphism() {
                    return Ok(Some(true));
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SPLIT_RANDOM_BUDGET {
                let f = x.field();
                let mut acc = Matrix::zero(f, y.dim(), x.dim());
                for b in &basis {
                    let c = f.from_i64(rng.gen_range(-4..=4i64));
                    if !f.is_zero(&c) {
                        acc = acc.add(&b.matrix().scale(&c)).unwrap();
                    }
                }
                if acc.rank() == x.dim() {
                    return Ok(Some(true));
                }
            }
            Ok(None)
        }
    }
}

/// The indecomposable projective modules, from a decomposition of the left
/// regular module (whose endomorphisms are the right multiplications, so no
/// hom-space computation is needed). Cached on the algebra. Each entry is
/// (module, embedding into the regular module, generator vector): the
/// generator is the component of 1 and generates the summand.
pub fn indecomposable_projectives(a: &Algebra) -> Result<&Vec<(Module, Matrix, Matrix)>> {
    if let Some(v) = a.projectives_cache().get() {
        return Ok(v);
    }
    let reg = Module::regular(a, Side::Left);
    let endo_mats: Vec<Matrix> = (0..a.dim())
        .map(|i| a.right_mult_matrix(&a.basis_element(i)))
        .collect();
    let parts = split_with_endos(&reg, &endo_mats, 0)?;
    let f = a.field();
    let embeds: Vec<&Matrix> = parts.iter().map(|(_, e)| e).collect();
    let full = Matrix::hstack(f, a.dim(), &embeds);
    let coords = full
        .inverse()
        .ok_or_else(|| Error::Internal("summand embeddings do not span".into()))?
        .mul(a.unit())
        .unwrap();
    let mut out = Vec::new();
    let mut off = 0;
    for (m, emb) in parts {
        let d = m.dim();
        let generator = coords.submatrix(off..off + d, 0..1);
        off += d;
        out.push((m, emb, generator));
    }
    let _ = a.projectives_cache().set(out);
    Ok(a.projectives_cache().get().unwrap())
}

/// Images of the projective generator under all maps P_j -> x, i.e. the
/// vectors annihilated by the annihilator of the generator.
fn hom_target_space(a: &Algebra, proj: &Module, generator: &Matrix, x: &Module) -> Matrix {
    let f = a.field();
    let cols: Vec<Matrix> = (0..a.dim())
        .map(|i| proj.action(i).mul(generator).unwrap())
        .collect();
    let refs: Vec<&Matrix> = cols.iter().collect();
    let psi = Matrix::hstack(f, proj.dim(), &refs); // A -> P_j, a |-> a.g
    let ann = psi.kernel_basis();
    if ann.cols() == 0 {
        // free of rank one on the generator: every vector is a valid image
        return Matrix::identity(f, x.dim());
    }
    let constraints: Vec<Matrix> = (0..ann.cols())
        .map(|c| x.apply_element(&ann.column(c)))
        .collect();
    let crefs: Vec<&Matrix> = constraints.iter().collect();
    Matrix::vstack(f, x.dim(), &crefs).kernel_basis()
}

/// A surjection from a projective module onto x. Over a prime field the
/// cover is assembled greedily from indecomposable projectives (close to
/// minimal; correctness of the homological dimensions downstream does not
/// depend on minimality). Over the rationals a free cover on a minimal
/// generating set is used instead.
pub fn projective_cover(x: &Module) -> Result<ModuleMap> {
    if x.field() == Field::Rational {
        return free_cover(x);
    }
    let a = x.algebra().clone();
    if x.dim() == 0 {
        let z = Module::zero(a);
        return Ok(ModuleMap::zero(&z, x));
    }
    let projs = indecomposable_projectives(&a)?.clone();
    let f = x.field();
    let radx = x.radical_subspace()?;
    let mut covered = EchelonSpan::new(f, x.dim());
    for c in 0..radx.cols() {
        covered.insert(&radx.column(c));
    }
    // chosen copies: (projective index, generator image)
    let mut chosen: Vec<(usize, Matrix)> = Vec::new();
    for (j, (pm, _, gen)) in projs.iter().enumerate() {
        let vspace = hom_target_space(&a, pm, gen, x);
        for c in 0..vspace.cols() {
            let v = vspace.column(c);
            let mut adds = false;
            for i in 0..a.dim() {
                let w = x.action(i).mul(&v).unwrap();
                if covered.insert(&w) {
                    adds = true;
                }
            }
            if adds {
                chosen.push((j, v));
            }
        }
        if covered.dim() == x.dim() {
            break;
        }
    }
    if covered.dim() != x.dim() {
        return Err(Error::Internal("projective maps fail to cover the module".into()));
    }
    let summands: Vec<Module> = chosen.iter().map(|(j, _)| projs[*j].0.clone()).collect();
    let (p, _, _) = Module::direct_sum(&summands)?;
    let mut blocks: Vec<Matrix> = Vec::new();
    for (j, v) in &chosen {
        let (pm, _, gen) = &projs[*j];
        // block B with B * (a.g) = a.v for all a
        let pcols: Vec<Matrix> = (0..a.dim()).map(|i| pm.action(i).mul(gen).unwrap()).collect();
        let prefs: Vec<&Matrix> = pcols.iter().collect();
        let psi = Matrix::hstack(f, pm.dim(), &prefs);
        let xcols: Vec<Matrix> = (0..a.dim()).map(|i| x.action(i).mul(v).unwrap()).collect();
        let xrefs: Vec<&Matrix> = xcols.iter().collect();
        let rv = Matrix::hstack(f, x.dim(), &xrefs);
        // solve B psi = rv, i.e. psi^T B^T = rv^T
        let bt = psi
            .transpose()
            .solve(&rv.transpose())?
            .ok_or_else(|| Error::Internal("cover block has no solution".into()))?;
        blocks.push(bt.transpose());
    }
    let brefs: Vec<&Matrix> = blocks.iter().collect();
    let map = Matrix::hstack(f, x.dim(), &brefs);
    Ok(ModuleMap::new_unchecked(p, x.clone(), map))
}

/// Surjection from a free module on a minimal generating set of x.
pub fn free_cover(x: &Module) -> Result<ModuleMap> {
    let a = x.algebra().clone();
    if x.dim() == 0 {
        let z = Module::zero(a);
        return Ok(ModuleMap::zero(&z, x));
    }
    let f = x.field();
    let radx = x.radical_subspace()?;
    // lift a basis of x / rad x
    let mut span = EchelonSpan::new(f, x.dim());
    for c in 0..radx.cols() {
        span.insert(&radx.column(c));
    }
    let mut gens: Vec<Matrix> = Vec::new();
    for i in 0..x.dim() {
        let e = Matrix::identity(f, x.dim()).column(i);
        if span.insert(&e) {
            gens.push(e);
        }
    }
    let reg = Module::regular(&a, Side::Left);
    let copies = vec![reg; gens.len()];
    let (free, _, _) = Module::direct_sum(&copies)?;
    let mut blocks: Vec<Matrix> = Vec::new();
    for v in &gens {
        let cols: Vec<Matrix> = (0..a.dim()).map(|i| x.action(i).mul(v).unwrap()).collect();
        let refs: Vec<&Matrix> = cols.iter().collect();
        blocks.push(Matrix::hstack(f, x.dim(), &refs));
    }
    let brefs: Vec<&Matrix> = blocks.iter().collect();
    let map = Matrix::hstack(f, x.dim(), &brefs);
    Ok(ModuleMap::new_unchecked(free, x.clone(), map))
}

/// First syzygy: kernel of a projective cover.
pub fn syzygy(x: &Module) -> Result<Module> {
    Ok(kernel(&projective_cover(x)?)?.0)
}

/// Projectivity via a splitting of a surjection from a projective module;
/// rigorous over both kinds of fields.
pub fn is_projective(x: &Module) -> Result<bool> {
    if x.dim() == 0 {
        return Ok(true);
    }
    let eps = projective_cover(x)?;
    let sections = hom_basis(x, eps.source())?;
    if sections.is_empty() {
        return Ok(false);
    }
    let f = x.field();
    let composed: Vec<Matrix> = sections
        .iter()
        .map(|s| eps.matrix().mul(s.matrix()).unwrap())
        .collect();
    let vecs: Vec<Matrix> = composed.iter().map(|m| m.vec()).collect();
    let refs: Vec<&Matrix> = vecs.iter().collect();
    let span = Matrix::hstack(f, x.dim() * x.dim(), &refs);
    Ok(span.solve(&Matrix::identity(f, x.dim()).vec())?.is_some())
}

pub fn is_injective(x: &Module) -> Result<bool> {
    is_projective(&x.dual())
}

/// Projective dimension, None when it exceeds the cutoff.
pub fn proj_dim(x: &Module, cutoff: usize) -> Result<Option<usize>> {
    let mut s = x.clone();
    for d in 0..=cutoff {
        if is_projective(&s)? {
            return Ok(Some(d));
        }
        s = syzygy(&s)?;
    }
    Ok(None)
}

/// Injective dimension via duality: inj.dim x = proj.dim D(x) over the
/// opposite algebra.
pub fn inj_dim(x: &Module, cutoff: usize) -> Result<Option<usize>> {
    proj_dim(&x.dual(), cutoff)
}

/// dim Ext^s(x, y), via a projective resolution of x.
pub fn ext_dim(x: &Module, y: &Module, s: usize) -> Result<usize> {
    if x.algebra() != y.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if s == 0 {
        return hom_dim(x, y);
    }
    // resolution terms P_0 .. P_{s+1} with differentials d_k : P_k -> P_{k-1}
    let mut terms: Vec<Module> = Vec::new();
    let mut diffs: Vec<ModuleMap> = Vec::new(); // diffs[k-1] = d_k
    let eps = projective_cover(x)?;
    terms.push(eps.source().clone());
    let (mut z, mut inc) = kernel(&eps)?;
    for _ in 1..=s + 1 {
        let cov = projective_cover(&z)?;
        terms.push(cov.source().clone());
        diffs.push(inc.compose(&cov)?);
        let (nz, ninc) = kernel(&cov)?;
        z = nz;
        inc = ninc;
    }
    // Hom(-, y) and the induced maps
    let hom_s = hom_basis(&terms[s], y)?;
    let hom_sm1 = hom_basis(&terms[s - 1], y)?;
    let hom_sp1 = hom_basis(&terms[s + 1], y)?;
    let f = x.field();
    let delta = |src: &Vec<ModuleMap>, dst: &Vec<ModuleMap>, d: &ModuleMap| -> Result<Matrix> {
        let images: Vec<Matrix> = src
            .iter()
            .map(|g| g.matrix().mul(d.matrix()).unwrap())
            .collect();
        let dst_mats: Vec<Matrix> = dst.iter().map(|h| h.matrix().clone()).collect();
        if dst_mats.is_empty() {
            return Ok(Matrix::zero(f, 0, src.len()));
        }
        coords_in_basis(f, &dst_mats, &images)
    };
    let d_s = delta(&hom_sm1, &hom_s, &diffs[s - 1])?; // Hom(P_{s-1}) -> Hom(P_s)
    let d_sp1 = delta(&hom_s, &hom_sp1, &diffs[s])?; // Hom(P_s) -> Hom(P_{s+1})
    Ok(d_sp1.kernel_basis().cols() - d_s.rank())
}

/// Global dimension = max projective dimension of the simple modules;
/// None when it exceeds the cutoff. Prime fields only (the simples come
/// from decomposing the regular module).
pub fn global_dimension(a: &Algebra, cutoff: usize) -> Result<Option<usize>> {
    let projs = indecomposable_projectives(a)?.clone();
    let mut max = 0;
    for (p, _, _) in &projs {
        let rad = p.radical_subspace()?;
        let (simple, _) = p.quotient(&rad)?;
        match proj_dim(&simple, cutoff)? {
            None => return Ok(None),
            Some(d) => max = max.max(d),
        }
    }
    Ok(Some(max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn dual_numbers() -> Algebra {
        Algebra::truncated_polynomial(f2(), 2).unwrap()
    }

    fn simple_over(a: &Algebra) -> Module {
        // top of the local algebra: quotient of the regular module by its radical
        let reg = Module::regular(a, Side::Left);
        let rad = reg.radical_subspace().unwrap();
        reg.quotient(&rad).unwrap().0
    }

    #[test]
    fn hom_dims_dual_numbers() {
        let a = dual_numbers();
        let reg = Module::regular(&a, Side::Left);
        let s = simple_over(&a);
        assert_eq!(hom_dim(&reg, &reg).unwrap(), 2);
        assert_eq!(hom_dim(&s, &reg).unwrap(), 1);
        assert_eq!(hom_dim(&reg, &s).unwrap(), 1);
        assert_eq!(hom_dim(&s, &s).unwrap(), 1);
        assert_eq!(hom_dim(&s, &Module::zero(a)).unwrap(), 0);
    }

    #[test]
    fn kernel_cokernel_of_multiplication_by_x() {
        let a = dual_numbers();
        let reg = Module::regular(&a, Side::Left);
        // multiplication by x on the regular module
        let m = reg.apply_element(&a.basis_element(1));
        let f = ModuleMap::new(reg.clone(), reg.clone(), m).unwrap();
        let (k, _) = kernel(&f).unwrap();
        let (c, _) = cokernel(&f).unwrap();
        assert_eq!(k.dim(), 1);
        assert_eq!(c.dim(), 1);
        let (im, _) = image(&f).unwrap();
        assert_eq!(im.dim(), 1);
    }

    #[test]
    fn regular_module_indecomposable_for_local_algebra() {
        let a = dual_numbers();
        let reg = Module::regular(&a, Side::Left);
        assert!(is_indecomposable(&reg, 0).unwrap());
    }

    #[test]
    fn sum_decomposes_with_multiplicity() {
        let a = dual_numbers();
        let reg = Module::regular(&a, Side::Left);
        let (sum, _, _) = Module::direct_sum(&[reg.clone(), reg.clone()]).unwrap();
        let d = decompose(&sum, 0).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1, 2);
        assert_eq!(d[0].0.dim(), 2);
    }

    #[test]
    fn mixed_sum_decomposes() {
        let a = dual_numbers();
        let reg = Module::regular(&a, Side::Left);
        let s = simple_over(&a);
        let (sum, _, _) = Module::direct_sum(&[reg.clone(), s.clone(), s.clone()]).unwrap();
        let mut d = decompose(&sum, 0).unwrap();
        d.sort_by_key(|(m, _)| m.dim());
        assert_eq!(d.len(), 2);
        assert_eq!((d[0].0.dim(), d[0].1), (1, 2));
        assert_eq!((d[1].0.dim(), d[1].1), (2, 1));
    }

    #[test]
    fn path_algebra_regular_decomposes_into_projectives() {
        let a = Algebra::path_algebra(&Quiver::linear(2), f2()).unwrap();
        let projs = indecomposable_projectives(&a).unwrap();
        let mut dims: Vec<usize> = projs.iter().map(|(m, _, _)| m.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        // generators actually generate
        for (m, _, g) in projs {
            assert_eq!(m.generated_subspace(&[g.clone()]).cols(), m.dim());
        }
    }

    #[test]
    fn projectivity_over_dual_numbers() {
        let a = dual_numbers();
        let reg = Module::regular(&a, Side::Left);
        let s = simple_over(&a);
        assert!(is_projective(&reg).unwrap());
        assert!(!is_projective(&s).unwrap());
        // self-injective: the regular module is injective, the simple is not
        assert!(is_injective(&reg).unwrap());
        assert!(!is_injective(&s).unwrap());
    }

    #[test]
    fn proj_dims_hereditary() {
        let a = Algebra::path_algebra(&Quiver::linear(2), f2()).unwrap();
        let projs = indecomposable_projectives(&a).unwrap().clone();
        for (p, _, _) in &projs {
            assert_eq!(proj_dim(p, 3).unwrap(), Some(0));
        }
        // one simple is projective, the other has projective dimension 1
        let mut dims: Vec<Option<usize>> = projs
            .iter()
            .map(|(p, _, _)| {
                let rad = p.radical_subspace().unwrap();
                proj_dim(&p.quotient(&rad).unwrap().0, 3).unwrap()
            })
            .collect();
        dims.sort();
        assert_eq!(dims, vec![Some(0), Some(1)]);
    }

    #[test]
    fn simple_has_infinite_proj_dim_over_dual_numbers() {
        let a = dual_numbers();
        let s = simple_over(&a);
        assert_eq!(proj_dim(&s, 6).unwrap(), None);
    }

    #[test]
    fn global_dimensions() {
        let kq = Algebra::path_algebra(&Quiver::linear(2), f2()).unwrap();
        assert_eq!(global_dimension(&kq, 5).unwrap(), Some(1));
        let k = Algebra::one_dim(f2());
        assert_eq!(global_dimension(&k, 5).unwrap(), Some(0));
        let a = dual_numbers();
        assert_eq!(global_dimension(&a, 6).unwrap(), None);
    }

    #[test]
    fn ext_over_dual_numbers() {
        let a = dual_numbers();
        let s = simple_over(&a);
        let reg = Module::regular(&a, Side::Left);
        // the simple is periodic: Ext^s(S, S) = k for all s
        for deg in 1..4 {
            assert_eq!(ext_dim(&s, &s, deg).unwrap(), 1);
            assert_eq!(ext_dim(&reg, &s, deg).unwrap(), 0);
        }
        assert_eq!(ext_dim(&s, &s, 0).unwrap(), 1);
    }

    #[test]
    fn ext_over_path_algebra() {
        let a = Algebra::path_algebra(&Quiver::linear(2), f2()).unwrap();
        let projs = indecomposable_projectives(&a).unwrap().clone();
        let simples: Vec<Module> = projs
            .iter()
            .map(|(p, _, _)| {
                let rad = p.radical_subspace().unwrap();
                p.quotient(&rad).unwrap().0
            })
            .collect();
        // hereditary: Ext^2 vanishes everywhere
        for s1 in &simples {
            for s2 in &simples {
                assert_eq!(ext_dim(s1, s2, 2).unwrap(), 0);
            }
        }
        // exactly one ordered pair of distinct simples has Ext^1 = k
        let mut ext1 = 0;
        for s1 in &simples {
            for s2 in &simples {
                ext1 += ext_dim(s1, s2, 1).unwrap();
            }
        }
        assert_eq!(ext1, 1);
    }

    #[test]
    fn iso_detection() {
        let a = dual_numbers();
        let reg = Module::regular(&a, Side::Left);
        let s = simple_over(&a);
        assert_eq!(are_isomorphic(&reg, &reg, 0).unwrap(), Some(true));
        assert_eq!(are_isomorphic(&reg, &s, 0).unwrap(), Some(false));
        // same dimension, different structure: S + S vs regular
        let (ss, _, _) = Module::direct_sum(&[s.clone(), s.clone()]).unwrap();
        assert_eq!(are_isomorphic(&ss, &reg, 0).unwrap(), Some(false));
        // conjugated copy of the regular module
        let conj = Matrix::from_i64_rows(f2(), &[&[1, 1], &[0, 1]]);
        let inv = conj.inverse().unwrap();
        let action: Vec<Matrix> = (0..a.dim())
            .map(|i| conj.mul(reg.action(i)).unwrap().mul(&inv).unwrap())
            .collect();
        let twisted = Module::new(a, 2, action).unwrap();
        assert_eq!(are_isomorphic(&twisted, &reg, 0).unwrap(), Some(true));
    }

    #[test]
    fn endo_of_regular_is_opposite() {
        let a = Algebra::path_algebra(&Quiver::linear(2), f2()).unwrap();
        let reg = Module::regular(&a, Side::Left);
        let (e, _) = endo_algebra(&reg).unwrap();
        assert_eq!(e.dim(), a.dim());
        e.check_associativity().unwrap();
    }

    #[test]
    fn rational_field_paths() {
        let a = Algebra::truncated_polynomial(Field::Rational, 2).unwrap();
        let reg = Module::regular(&a, Side::Left);
        assert!(is_projective(&reg).unwrap());
        let rad = reg.radical_subspace().unwrap();
        let s = reg.quotient(&rad).unwrap().0;
        assert!(!is_projective(&s).unwrap());
        assert_eq!(ext_dim(&s, &s, 1).unwrap(), 1);
        assert!(decompose(&reg, 0).is_err()); // refused over the rationals
    }
}
