//! Representations of a finite acyclic quiver with coefficients in a
//! finite-dimensional algebra A, and the equivalence with modules over the
//! tensor algebra kQ (x) A.
//!
//! A representation has a branch module X_v at each vertex and an A-map for
//! each arrow. At each vertex the arrow maps into it assemble into
//! delta_v : (+)_{a: s -> v} X_s -> X_v; the representation is monic when
//! every delta_v is injective, and cok_v is the cokernel of delta_v.

use crate::algebra::{Algebra, Module, ModuleMap};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::{Path, Quiver};

/// Tensor algebra kQ (x) A; basis pairs (path, A-basis element) ordered
/// path-major in the canonical path order.
pub fn lambda_algebra(q: &Quiver, a: &Algebra) -> Result<Algebra> {
    let kq = Algebra::path_algebra(q, a.field())?;
    Algebra::tensor(&kq, a)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Quiver,
    algebra: Algebra,
    branches: Vec<Module>,
    arrows: Vec<ModuleMap>,
}

impl Representation {
    pub fn new(
        quiver: Quiver,
        algebra: Algebra,
        branches: Vec<Module>,
        arrows: Vec<ModuleMap>,
    ) -> Result<Representation> {
        if branches.len() != quiver.vertex_count() {
            return Err(Error::InvalidRepresentation(format!(
                "expected {} branch modules, got {}",
                quiver.vertex_count(),
                branches.len()
            )));
        }
        for b in &branches {
            if b.algebra() != &algebra {
                return Err(Error::AlgebraMismatch);
            }
        }
        if arrows.len() != quiver.arrows().len() {
            return Err(Error::InvalidRepresentation(format!(
                "expected {} arrow maps, got {}",
                quiver.arrows().len(),
                arrows.len()
            )));
        }
        for (i, (m, arr)) in arrows.iter().zip(quiver.arrows()).enumerate() {
            if m.source() != &branches[arr.from - 1] || m.target() != &branches[arr.to - 1] {
                return Err(Error::InvalidRepresentation(format!(
                    "arrow map {i} does not match branches {} -> {}",
                    arr.from, arr.to
                )));
            }
            m.validate()?;
        }
        Ok(Representation { quiver, algebra, branches, arrows })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn branch(&self, v: usize) -> &Module {
        &self.branches[v - 1]
    }

    pub fn branches(&self) -> &[Module] {
        &self.branches
    }

    pub fn arrow_map(&self, idx: usize) -> &ModuleMap {
        &self.arrows[idx]
    }

    pub fn total_dim(&self) -> usize {
        self.branches.iter().map(|b| b.dim()).sum()
    }

    pub fn zero(quiver: Quiver, algebra: Algebra) -> Representation {
        let branches: Vec<Module> = (0..quiver.vertex_count())
            .map(|_| Module::zero(algebra.clone()))
            .collect();
        let arrows = quiver
            .arrows()
            .iter()
            .map(|a| ModuleMap::zero(&branches[a.from - 1], &branches[a.to - 1]))
            .collect();
        Representation { quiver, algebra, branches, arrows }
    }

    pub fn direct_sum(parts: &[Representation]) -> Result<Representation> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidRepresentation("direct sum of an empty list".into()));
        };
        let q = first.quiver.clone();
        let a = first.algebra.clone();
        for p in parts {
            if p.quiver != q || p.algebra != a {
                return Err(Error::AlgebraMismatch);
            }
        }
        let mut branches = Vec::new();
        for v in q.vertices() {
            let mods: Vec<Module> = parts.iter().map(|p| p.branch(v).clone()).collect();
            branches.push(Module::direct_sum(&mods)?.0);
        }
        let f = a.field();
        let arrows = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, arr)| {
                let blocks: Vec<&Matrix> =
                    parts.iter().map(|p| p.arrows[i].matrix()).collect();
                let m = Matrix::block_diag(f, &blocks);
                ModuleMap::new_unchecked(
                    branches[arr.from - 1].clone(),
                    branches[arr.to - 1].clone(),
                    m,
                )
            })
            .collect();
        Ok(Representation { quiver: q, algebra: a, branches, arrows })
    }

    /// Composite of the arrow maps along a path (identity on the trivial
    /// path).
    fn path_map(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.algebra.field(), self.branch(p.source).dim());
        for &ai in &p.arrows {
            m = self.arrows[ai].matrix().mul(&m).unwrap();
        }
        m
    }

    /// The assembled map delta_v : (+)_{a : s -> v} X_s -> X_v.
    pub fn delta(&self, v: usize) -> ModuleMap {
        let incoming = self.quiver.arrows_into(v);
        let f = self.algebra.field();
        if incoming.is_empty() {
            let z = Module::zero(self.algebra.clone());
            return ModuleMap::zero(&z, self.branch(v));
        }
        let sources: Vec<Module> = incoming
            .iter()
            .map(|&ai| self.arrows[ai].source().clone())
            .collect();
        let (sum, _, _) = Module::direct_sum(&sources).unwrap();
        let mats: Vec<&Matrix> = incoming.iter().map(|&ai| self.arrows[ai].matrix()).collect();
        let m = Matrix::hstack(f, self.branch(v).dim(), &mats);
        ModuleMap::new_unchecked(sum, self.branch(v).clone(), m)
    }

    /// Cokernel of delta_v, with the projection from the branch at v.
    pub fn cok(&self, v: usize) -> Result<(Module, ModuleMap)> {
        let d = self.delta(v);
        self.branch(v).quotient(&d.matrix().column_space_basis())
    }

    pub fn is_monic(&self) -> bool {
        self.quiver.vertices().all(|v| self.delta(v).is_injective())
    }

    /// The corresponding module over kQ (x) A: underlying space the direct
    /// sum of the branches in vertex order; a basis element (p, b) acts on
    /// the branch at the source of p by the b-action followed by the
    /// composite arrow map along p.
    pub fn to_module(&self) -> Result<Module> {
        let lambda = lambda_algebra(&self.quiver, &self.algebra)?;
        let f = self.algebra.field();
        let total = self.total_dim();
        let offsets: Vec<usize> = self
            .quiver
            .vertices()
            .scan(0, |acc, v| {
                let o = *acc;
                *acc += self.branch(v).dim();
                Some(o)
            })
            .collect();
        let paths = self.quiver.paths();
        let na = self.algebra.dim();
        let mut action = Vec::with_capacity(lambda.dim());
        for p in &paths {
            let pm = self.path_map(p);
            for k in 0..na {
                let block = pm.mul(self.branch(p.source).action(k)).unwrap();
                let mut m = Matrix::zero(f, total, total);
                let (ro, co) = (offsets[p.target - 1], offsets[p.source - 1]);
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        m.set(ro + i, co + j, block.get(i, j).clone());
                    }
                }
                action.push(m);
            }
        }
        Module::new_unchecked(lambda, total, action)
    }

    /// Inverse construction: splits a module over kQ (x) A along the vertex
    /// idempotents and reads off branches and arrow maps.
    pub fn from_module(q: &Quiver, a: &Algebra, m: &Module) -> Result<Representation> {
        let lambda = lambda_algebra(q, a)?;
        if m.algebra() != &lambda {
            return Err(Error::AlgebraMismatch);
        }
        let f = a.field();
        let paths = q.paths();
        let na = a.dim();
        // coordinates of e_v (x) 1 and of 1 (x) b, a (x) 1 elements
        let elem = |p_idx: usize, a_coords: &Matrix| -> Matrix {
            let mut v = Matrix::zero(f, lambda.dim(), 1);
            for k in 0..na {
                v.set(p_idx * na + k, 0, a_coords.get(k, 0).clone());
            }
            v
        };
        let trivial_idx: Vec<usize> = q
            .vertices()
            .map(|v| {
                paths
                    .iter()
                    .position(|p| p.is_empty() && p.source == v)
                    .expect("trivial path missing")
            })
            .collect();
        let mut branches = Vec::new();
        let mut embeddings = Vec::new();
        for v in q.vertices() {
            let idem = m.apply_element(&elem(trivial_idx[v - 1], a.unit()));
            let basis = idem.column_space_basis();
            // A acts through e_v (x) b on the branch
            let mut action = Vec::with_capacity(na);
            for k in 0..na {
                let act = m.apply_element(&elem(trivial_idx[v - 1], &a.basis_element(k)));
                let img = act.mul(&basis).unwrap();
                let sol = basis.solve(&img)?.ok_or_else(|| {
                    Error::Internal("vertex subspace not invariant under coefficients".into())
                })?;
                action.push(sol);
            }
            branches.push(Module::new_unchecked(a.clone(), basis.cols(), action)?);
            embeddings.push(basis);
        }
        let total: usize = branches.iter().map(|b| b.dim()).sum();
        if total != m.dim() {
            return Err(Error::InvalidModule(
                "vertex idempotents do not decompose the module".into(),
            ));
        }
        let arrows = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, arr)| -> Result<ModuleMap> {
                let p_idx = paths
                    .iter()
                    .position(|p| p.arrows == vec![ai])
                    .expect("arrow path missing");
                let act = m.apply_element(&elem(p_idx, a.unit()));
                let img = act.mul(&embeddings[arr.from - 1]).unwrap();
                let sol = embeddings[arr.to - 1].solve(&img)?.ok_or_else(|| {
                    Error::Internal("arrow action leaves the target branch".into())
                })?;
                Ok(ModuleMap::new_unchecked(
                    branches[arr.from - 1].clone(),
                    branches[arr.to - 1].clone(),
                    sol,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Representation::new(q.clone(), a.clone(), branches, arrows)
    }

    /// Base change along - (x) T: branches V_v (x) T, arrow maps M_a (x) id.
    /// `self` must have one-dimensional coefficients (a plain quiver
    /// representation over the field).
    pub fn tensor_with(&self, t: &Module) -> Result<Representation> {
        if self.algebra.dim() != 1 {
            return Err(Error::InvalidRepresentation(
                "base change starts from a representation over the field".into(),
            ));
        }
        let a = t.algebra().clone();
        if a.field() != self.algebra.field() {
            return Err(Error::FieldMismatch);
        }
        let f = a.field();
        let branches: Vec<Module> = self
            .quiver
            .vertices()
            .map(|v| {
                let d = self.branch(v).dim();
                let action: Vec<Matrix> = (0..a.dim())
                    .map(|k| Matrix::identity(f, d).kron(t.action(k)))
                    .collect();
                Module::new_unchecked(a.clone(), d * t.dim(), action)
            })
            .collect::<Result<Vec<_>>>()?;
        let id_t = Matrix::identity(f, t.dim());
        let arrows = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, arr)| {
                let m = self.arrows[i].matrix().kron(&id_t);
                ModuleMap::new_unchecked(
                    branches[arr.from - 1].clone(),
                    branches[arr.to - 1].clone(),
                    m,
                )
            })
            .collect();
        Ok(Representation { quiver: self.quiver.clone(), algebra: a, branches, arrows })
    }
}

/// The indecomposable projective kQ-module P(i) as a representation over the
/// field: branch at j has the paths i -> j as basis, arrows act by
/// composition.
pub fn proj_rep(q: &Quiver, i: usize, field: crate::field::Field) -> Representation {
    let k = Algebra::one_dim(field);
    let paths = q.paths();
    let branch_paths: Vec<Vec<&Path>> = q
        .vertices()
        .map(|v| paths.iter().filter(|p| p.source == i && p.target == v).collect())
        .collect();
    let branches: Vec<Module> = branch_paths
        .iter()
        .map(|ps| trivial_module(&k, ps.len()))
        .collect();
    let arrows = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, arr)| {
            let src = &branch_paths[arr.from - 1];
            let dst = &branch_paths[arr.to - 1];
            let mut m = Matrix::zero(field, dst.len(), src.len());
            for (c, p) in src.iter().enumerate() {
                let arrow_path = Path { source: arr.from, target: arr.to, arrows: vec![ai] };
                let composed = q.compose(p, &arrow_path).unwrap();
                let r = dst.iter().position(|d| **d == composed).unwrap();
                m.set(r, c, field.one());
            }
            ModuleMap::new_unchecked(
                branches[arr.from - 1].clone(),
                branches[arr.to - 1].clone(),
                m,
            )
        })
        .collect();
    Representation { quiver: q.clone(), algebra: k, branches, arrows }
}

/// The indecomposable injective kQ-module I(i): branch at j has the paths
/// j -> i as basis, an arrow acts by stripping itself from the start of a
/// path.
pub fn inj_rep(q: &Quiver, i: usize, field: crate::field::Field) -> Representation {
    let k = Algebra::one_dim(field);
    let paths = q.paths();
    let branch_paths: Vec<Vec<&Path>> = q
        .vertices()
        .map(|v| paths.iter().filter(|p| p.source == v && p.target == i).collect())
        .collect();
    let branches: Vec<Module> = branch_paths
        .iter()
        .map(|ps| trivial_module(&k, ps.len()))
        .collect();
    let arrows = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, arr)| {
            let src = &branch_paths[arr.from - 1];
            let dst = &branch_paths[arr.to - 1];
            let mut m = Matrix::zero(field, dst.len(), src.len());
            for (c, p) in src.iter().enumerate() {
                // p : from -> i; the image is p with the arrow removed in
                // front, defined when p starts with this arrow
                if p.arrows.first() == Some(&ai) {
                    let stripped = Path {
                        source: arr.to,
                        target: i,
                        arrows: p.arrows[1..].to_vec(),
                    };
                    let r = dst.iter().position(|d| **d == stripped).unwrap();
                    m.set(r, c, field.one());
                }
            }
            ModuleMap::new_unchecked(
                branches[arr.from - 1].clone(),
                branches[arr.to - 1].clone(),
                m,
            )
        })
        .collect();
    Representation { quiver: q.clone(), algebra: k, branches, arrows }
}

/// The simple kQ-module S(i) concentrated at one vertex.
pub fn simple_rep(q: &Quiver, i: usize, field: crate::field::Field) -> Representation {
    let k = Algebra::one_dim(field);
    let branches: Vec<Module> = q
        .vertices()
        .map(|v| trivial_module(&k, usize::from(v == i)))
        .collect();
    let arrows = q
        .arrows()
        .iter()
        .map(|arr| ModuleMap::zero(&branches[arr.from - 1], &branches[arr.to - 1]))
        .collect();
    Representation { quiver: q.clone(), algebra: k, branches, arrows }
}

/// kQ itself as a representation over the field: the sum of all P(i).
pub fn regular_rep(q: &Quiver, field: crate::field::Field) -> Representation {
    let parts: Vec<Representation> = q.vertices().map(|i| proj_rep(q, i, field)).collect();
    Representation::direct_sum(&parts).unwrap()
}

fn trivial_module(k: &Algebra, dim: usize) -> Module {
    Module::new_unchecked(k.clone(), dim, vec![Matrix::identity(k.field(), dim)]).unwrap()
}
