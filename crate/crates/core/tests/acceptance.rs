//! Acceptance suite: one test per top-level correctness criterion, each
//! printing a single pass/fail line. Every quantitative anchor below was
//! computed by the enumeration oracle or by hand on paper-sized instances
//! and is frozen here as an exact expectation.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use monocat::algebra::{Algebra, Module, ModuleMap, Side};
use monocat::fintype::{
    self, auslander_equality_check, certify_finite_type, enumerate_indecomposables,
    enumerate_monic_indecomposables, gamma_algebra, lemma63_construct, rel_dim, Enumeration,
};
use monocat::homalg;
use monocat::json;
use monocat::matrix::Matrix;
use monocat::monrep::{self, Representation};
use monocat::quiver::Quiver;
use monocat::tiltperp::{self, add_membership, cotilt_transfer_check, kq_tensor};
use monocat::Field;

fn criterion<F>(n: usize, name: &str, body: F)
where
    F: FnOnce() + std::panic::UnwindSafe,
{
    let outcome = std::panic::catch_unwind(body);
    let status = if outcome.is_ok() { "pass" } else { "fail" };
    // write to the process stdout directly so the line is visible even
    // though the harness captures the print macros of passing tests
    {
        use std::io::Write;
        use std::os::fd::BorrowedFd;
        let fd = unsafe { BorrowedFd::borrow_raw(1) };
        let mut out = std::fs::File::from(fd.try_clone_to_owned().unwrap());
        writeln!(out, "criterion {n} ({name}): {status}").unwrap();
    }
    if let Err(e) = outcome {
        std::panic::resume_unwind(e);
    }
}

fn f2() -> Field {
    Field::Prime(2)
}

fn dual_numbers() -> Algebra {
    Algebra::truncated_polynomial(f2(), 2).unwrap()
}

fn a2() -> Quiver {
    Quiver::linear(2)
}

/// The oracle panel for Q = A_2 over k[x]/x^2: all indecomposables with
/// branch dimensions at most 3 (the list saturates at bound 2; 9 classes).
fn dual_panel() -> Enumeration {
    let e = enumerate_indecomposables(&a2(), &dual_numbers(), 3, 0).unwrap();
    assert!(e.complete);
    assert_eq!(e.reps.len(), 9);
    e
}

/// The oracle panel for Q = A_2 over the hereditary base A = kQ(A_2).
fn hereditary_panel() -> (Algebra, Enumeration) {
    let a = Algebra::path_algebra(&a2(), f2()).unwrap();
    let e = enumerate_indecomposables(&a2(), &a, 2, 0).unwrap();
    assert!(e.complete);
    (a, e)
}

fn simple_quotient(p: &Module) -> Module {
    let rad = p.radical_subspace().unwrap();
    p.quotient(&rad).unwrap().0
}

/// Pairwise-nonisomorphic list of the indecomposable projectives,
/// injectives, and simples of an algebra.
fn proj_inj_simple_classes(a: &Algebra) -> Vec<Module> {
    let mut out: Vec<Module> = Vec::new();
    let mut push = |m: Module| {
        if !out.iter().any(|x| homalg::are_isomorphic(x, &m, 0).unwrap() == Some(true)) {
            out.push(m);
        }
    };
    for (p, _, _) in homalg::indecomposable_projectives(a).unwrap().clone() {
        push(simple_quotient(&p));
        push(p);
    }
    for (p, _, _) in homalg::indecomposable_projectives(&a.opposite()).unwrap().clone() {
        push(p.dual());
    }
    out
}

#[test]
fn c1_monic_iff_first_ext_vanishes() {
    criterion(1, "monic iff Ext^1 against the injective tensor vanishes", || {
        let q = a2();
        let a = dual_numbers();
        let panel = dual_panel();
        let da = Module::regular(&a, Side::Right).dual();
        let (_, cotensor) = kq_tensor(&q, &da).unwrap();
        for rep in &panel.reps {
            let x = rep.to_module().unwrap();
            let vanishes = homalg::ext_dim(&x, &cotensor, 1).unwrap() == 0;
            assert_eq!(
                rep.is_monic(),
                vanishes,
                "disagreement at dims {:?}",
                rep.branches().iter().map(|b| b.dim()).collect::<Vec<_>>()
            );
        }
    });
}

#[test]
fn c2_reciprocity_on_enumerated_panels() {
    criterion(2, "monomorphism-perpendicular reciprocity", || {
        let q = a2();
        // self-injective base, t = A
        let a = dual_numbers();
        let panel = dual_panel();
        let t = Module::regular(&a, Side::Left);
        let v = tiltperp::reciprocity_check(&q, &t, &panel.reps, 8, 0).unwrap();
        assert!(v.is_holds(), "self-injective instance: {:?}", v.witness);
        // hereditary base, t = A (injective dimension 1) and t = D(A)
        let (h, hpanel) = hereditary_panel();
        let th = Module::regular(&h, Side::Left);
        let v = tiltperp::reciprocity_check(&q, &th, &hpanel.reps, 8, 0).unwrap();
        assert!(v.is_holds(), "hereditary t = A: {:?}", v.witness);
        let dh = Module::regular(&h, Side::Right).dual();
        let v = tiltperp::reciprocity_check(&q, &dh, &hpanel.reps, 8, 0).unwrap();
        assert!(v.is_holds(), "hereditary t = D(A): {:?}", v.witness);
    });
}

fn adjunction_instance(q: &Quiver, panel: &[Representation], pool: &[Module], rng: &mut ChaCha8Rng) {
    let n = q.vertex_count();
    let mut done = 0usize;
    while done < 100 {
        let x = &panel[rng.gen_range(0..panel.len())];
        let t = &pool[rng.gen_range(0..pool.len())];
        let i = rng.gen_range(1..=n);
        let lhs = homalg::hom_dim(&x.cok(i).unwrap().0, t).unwrap();
        let st = monrep::simple_rep(q, i, t.field())
            .tensor_with(t)
            .unwrap()
            .to_module()
            .unwrap();
        let rhs = homalg::hom_dim(&x.to_module().unwrap(), &st).unwrap();
        assert_eq!(lhs, rhs, "cok adjunction failed at vertex {i}");
        done += 1;
    }
}

#[test]
fn c3_cokernel_hom_adjunction_random_triples() {
    criterion(3, "cokernel/simple-tensor hom adjunction on 100 random triples", || {
        let q = a2();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = dual_numbers();
        let panel = dual_panel();
        let reg = Module::regular(&a, Side::Left);
        let s = simple_quotient(&reg);
        let pool = vec![
            s.clone(),
            reg.clone(),
            Module::direct_sum(&[s.clone(), s.clone()]).unwrap().0,
            Module::direct_sum(&[reg.clone(), s]).unwrap().0,
        ];
        adjunction_instance(&q, &panel.reps, &pool, &mut rng);
        let (h, hpanel) = hereditary_panel();
        let pool: Vec<Module> = proj_inj_simple_classes(&h);
        adjunction_instance(&q, &hpanel.reps, &pool, &mut rng);
    });
}

#[test]
fn c4_ext_of_projective_tensor_localizes_to_branch() {
    criterion(4, "Ext against projective tensors computes branchwise", || {
        let q = a2();
        for (a, panel) in [
            (dual_numbers(), dual_panel()),
            {
                let (h, p) = hereditary_panel();
                (h, p)
            },
        ] {
            let reg = Module::regular(&a, Side::Left);
            let pool = vec![reg.clone(), simple_quotient(&reg)];
            for t in &pool {
                for i in q.vertices() {
                    let pt = monrep::proj_rep(&q, i, a.field())
                        .tensor_with(t)
                        .unwrap()
                        .to_module()
                        .unwrap();
                    for rep in &panel.reps {
                        let x = rep.to_module().unwrap();
                        for s in 0..=2usize {
                            let lhs = homalg::ext_dim(&pt, &x, s).unwrap();
                            let rhs = homalg::ext_dim(t, rep.branch(i), s).unwrap();
                            assert_eq!(lhs, rhs, "s = {s}, vertex {i}");
                        }
                    }
                }
            }
        }
    });
}

#[test]
fn c5_cotilting_transfer_with_endomorphism_count() {
    criterion(5, "cotilting transfer and endomorphism dimension", || {
        let q = a2();
        let paths = q.paths().len() as u64;
        // self-injective base: t = A, inj.dim 0; dim End = 3 * 2 = 6
        let a = dual_numbers();
        let t = Module::regular(&a, Side::Left);
        let v = cotilt_transfer_check(&q, &t, 8, 0).unwrap();
        assert!(v.is_holds(), "{:?}", v.witness);
        assert_eq!(v.cutoffs["end_dim"], paths * homalg::hom_dim(&t, &t).unwrap() as u64);
        assert_eq!(v.cutoffs["end_dim"], 6);
        assert!(v.cutoffs["inj_dim_transfer"] <= v.cutoffs["inj_dim_base"] + 1);
        // hereditary base: t = A, inj.dim 1; dim End = 3 * 3 = 9
        let h = Algebra::path_algebra(&q, f2()).unwrap();
        let th = Module::regular(&h, Side::Left);
        let v = cotilt_transfer_check(&q, &th, 8, 0).unwrap();
        assert!(v.is_holds(), "{:?}", v.witness);
        assert_eq!(v.cutoffs["end_dim"], paths * homalg::hom_dim(&th, &th).unwrap() as u64);
        assert!(v.cutoffs["inj_dim_transfer"] <= v.cutoffs["inj_dim_base"] + 1);
    });
}

fn monic_generator(panel: &Enumeration) -> (Vec<&Representation>, Module) {
    let monic: Vec<&Representation> = panel.reps.iter().filter(|r| r.is_monic()).collect();
    let mods: Vec<Module> = monic.iter().map(|r| r.to_module().unwrap()).collect();
    (monic, Module::direct_sum(&mods).unwrap().0)
}

#[test]
fn c6_finite_type_certificates() {
    criterion(6, "finite-type certificates over k, k[x]/x^2, k[x]/x^3", || {
        let q = a2();
        // base field: exactly the two indecomposable projectives, gl.dim 1
        let k = Algebra::one_dim(f2());
        let e = enumerate_indecomposables(&q, &k, 2, 0).unwrap();
        assert!(e.complete);
        let (monic, m) = monic_generator(&e);
        assert_eq!(monic.len(), 2);
        let cert = certify_finite_type(&q, &k, &m, 0).unwrap();
        assert_eq!(cert.summands.len(), 2);
        let (gamma, _) = gamma_algebra(&m).unwrap();
        assert_eq!(homalg::global_dimension(&gamma, 8).unwrap(), Some(1));
        // k[x]/x^2: summand list matches the oracle's monic list; gl.dim <= 2
        let a = dual_numbers();
        let panel = dual_panel();
        let (monic, m) = monic_generator(&panel);
        let small = enumerate_indecomposables(&q, &a, 2, 0).unwrap();
        assert_eq!(
            small.reps.iter().filter(|r| r.is_monic()).count(),
            monic.len(),
            "oracle monic count must be stable from bound 2 to bound 3"
        );
        let cert = certify_finite_type(&q, &a, &m, 0).unwrap();
        assert_eq!(cert.summands.len(), monic.len());
        let (gamma, _) = gamma_algebra(&m).unwrap();
        let gl = homalg::global_dimension(&gamma, 8).unwrap().unwrap();
        assert!(gl <= 2, "gl.dim = {gl}");
        // positive direction of the truncation-degree dichotomy: degree 3
        // certifies as well; no claim is made for degree >= 4
        let a3 = Algebra::truncated_polynomial(f2(), 3).unwrap();
        // branch bound 4: the monic list contains a non-picket indecomposable
        // with branch dimensions (2, 4) that bound 3 misses
        let e3 = enumerate_monic_indecomposables(&q, &a3, 4, 0).unwrap();
        assert!(e3.complete);
        assert_eq!(e3.reps.len(), 10);
        assert!(e3
            .reps
            .iter()
            .any(|r| r.branch(1).dim() == 4 && r.branch(2).dim() == 2));
        let (_, m3) = monic_generator(&e3);
        let cert = certify_finite_type(&q, &a3, &m3, 0).unwrap();
        assert_eq!(cert.summands.len(), 10);
    });
}

#[test]
fn c7_gorenstein_projectives_on_panels() {
    criterion(7, "Gorenstein-projective detection matches monic/projective", || {
        // self-injective base: GP = monic
        let panel = dual_panel();
        for rep in &panel.reps {
            let x = rep.to_module().unwrap();
            let v = tiltperp::gp_membership(&x, 8).unwrap();
            assert_eq!(v.is_holds(), rep.is_monic(), "dims {:?}", x.dim());
        }
        // hereditary base: GP = projective
        let (_, hpanel) = hereditary_panel();
        for rep in &hpanel.reps {
            let x = rep.to_module().unwrap();
            let v = tiltperp::gp_membership(&x, 8).unwrap();
            assert_eq!(v.is_holds(), homalg::is_projective(&x).unwrap(), "dims {:?}", x.dim());
        }
    });
}

#[test]
fn c8_relative_dimension_and_dimension_shift() {
    criterion(8, "relative-dimension equality and dimension shift", || {
        // equality of proj.dim over End(M)^op with the relative dimension,
        // across hereditary path algebras and the tensor instance
        let mut equality_instances = 0usize;
        for p in [2u64, 3] {
            let f = Field::Prime(p);
            for n in [2usize, 3] {
                let b = Algebra::path_algebra(&Quiver::linear(n), f).unwrap();
                let reg = Module::regular(&b, Side::Left);
                let db = Module::regular(&b, Side::Right).dual();
                let (m, _, _) = Module::direct_sum(&[reg, db]).unwrap();
                for x in proj_inj_simple_classes(&b) {
                    let v = auslander_equality_check(&m, &x, 8, 0).unwrap();
                    assert!(v.is_holds(), "kQ(A_{n}) over F_{p}: {:?}", v.witness);
                    equality_instances += 1;
                }
            }
        }
        let panel = dual_panel();
        let (_, m) = monic_generator(&panel);
        for rep in &panel.reps {
            let x = rep.to_module().unwrap();
            let v = auslander_equality_check(&m, &x, 8, 0).unwrap();
            assert!(v.is_holds(), "tensor instance: {:?}", v.witness);
            equality_instances += 1;
        }
        assert!(equality_instances >= 20, "only {equality_instances} equality instances");

        // dimension shift: 0 -> x -> T_0 -> T_1 with T_i in add(t) shifts
        // the projective dimension of Hom(m, x) by exactly 2
        let mut shift_instances = 0usize;
        for p in [2u64, 3, 5] {
            let f = Field::Prime(p);
            for n in [2usize, 3] {
                let b = Algebra::path_algebra(&Quiver::linear(n), f).unwrap();
                let reg = Module::regular(&b, Side::Left);
                let db = Module::regular(&b, Side::Right).dual();
                let (m, _, _) = Module::direct_sum(&[reg, db.clone()]).unwrap();
                let classes = proj_inj_simple_classes(&b);
                let all = Module::direct_sum(&classes).unwrap().0;
                let (m_big, _, _) = Module::direct_sum(&[m.clone(), all]).unwrap();
                for x in &classes {
                    if homalg::is_injective(x).unwrap() {
                        continue;
                    }
                    for mm in [&m, &m_big] {
                        let (_, v) = lemma63_construct(mm, &db, x, 8, 0).unwrap();
                        assert!(v.is_holds(), "A_{n} over F_{p}: {:?}", v.witness);
                        shift_instances += 1;
                    }
                }
            }
        }
        assert!(shift_instances >= 20, "only {shift_instances} shift instances");

        // relative dimension against the regular module recovers the
        // projective dimension on all panel modules of finite dimension
        let lambda_reg = {
            let rep0 = &panel.reps[0];
            Module::regular(rep0.to_module().unwrap().algebra(), Side::Left)
        };
        let mut pd_instances = 0usize;
        for rep in &panel.reps {
            let x = rep.to_module().unwrap();
            if let Some(d) = homalg::proj_dim(&x, 3).unwrap() {
                assert_eq!(rel_dim(&lambda_reg, &x, 4, 0).unwrap(), Some(d));
                pd_instances += 1;
            }
        }
        assert!(pd_instances >= 2);
    });
}

/// Ext computed from a free (non-minimal) resolution; the acceptance check
/// compares it against the minimal-cover computation in `homalg`.
fn ext_via_free_resolution(x: &Module, y: &Module, s: usize) -> usize {
    assert!(s >= 1);
    let f = x.field();
    let mut terms: Vec<Module> = Vec::new();
    let mut diffs: Vec<ModuleMap> = Vec::new();
    let eps = homalg::free_cover(x).unwrap();
    terms.push(eps.source().clone());
    let (mut z, mut inc) = homalg::kernel(&eps).unwrap();
    for _ in 1..=s + 1 {
        let cov = homalg::free_cover(&z).unwrap();
        terms.push(cov.source().clone());
        diffs.push(inc.compose(&cov).unwrap());
        let (nz, ninc) = homalg::kernel(&cov).unwrap();
        z = nz;
        inc = ninc;
    }
    let coords = |src: &[ModuleMap], dst: &[ModuleMap], d: &ModuleMap| -> Matrix {
        if dst.is_empty() {
            return Matrix::zero(f, 0, src.len());
        }
        let flat: Vec<Matrix> = dst.iter().map(|h| h.matrix().vec()).collect();
        let basis = Matrix::hstack(f, flat[0].rows(), &flat.iter().collect::<Vec<_>>());
        let imgs: Vec<Matrix> = src
            .iter()
            .map(|g| g.matrix().mul(d.matrix()).unwrap().vec())
            .collect();
        let rhs = Matrix::hstack(f, basis.rows(), &imgs.iter().collect::<Vec<_>>());
        basis.solve(&rhs).unwrap().expect("image must lie in the hom space")
    };
    let hom: Vec<Vec<ModuleMap>> = terms.iter().map(|t| homalg::hom_basis(t, y).unwrap()).collect();
    let d_s = coords(&hom[s - 1], &hom[s], &diffs[s - 1]);
    let d_sp1 = coords(&hom[s], &hom[s + 1], &diffs[s]);
    d_sp1.kernel_basis().cols() - d_s.rank()
}

#[test]
fn c9_infrastructure_properties() {
    criterion(9, "resolution independence, decomposition witnesses, radical, determinism", || {
        let q = a2();
        let a = dual_numbers();
        let panel = dual_panel();

        // Ext does not depend on the choice of projective resolution:
        // minimal covers vs free covers agree
        let da = Module::regular(&a, Side::Right).dual();
        let (_, cotensor) = kq_tensor(&q, &da).unwrap();
        for rep in panel.reps.iter().take(5) {
            let x = rep.to_module().unwrap();
            for s in 1..=2usize {
                assert_eq!(
                    homalg::ext_dim(&x, &cotensor, s).unwrap(),
                    ext_via_free_resolution(&x, &cotensor, s),
                    "resolution dependence at s = {s}"
                );
            }
        }

        // decomposition produces a verified Krull-Schmidt witness
        let pieces: Vec<Module> = panel.reps.iter().take(4).map(|r| r.to_module().unwrap()).collect();
        let (sum, _, _) = Module::direct_sum(&[
            pieces[0].clone(),
            pieces[1].clone(),
            pieces[1].clone(),
            pieces[2].clone(),
            pieces[3].clone(),
        ])
        .unwrap();
        let parts = homalg::decompose(&sum, 0).unwrap();
        let mut rebuilt: Vec<Module> = Vec::new();
        for (m, mult) in &parts {
            assert!(homalg::is_indecomposable(m, 0).unwrap());
            for _ in 0..*mult {
                rebuilt.push(m.clone());
            }
        }
        let (rebuilt, _, _) = Module::direct_sum(&rebuilt).unwrap();
        assert_eq!(homalg::are_isomorphic(&rebuilt, &sum, 0).unwrap(), Some(true));
        let again = homalg::decompose(&sum, 1).unwrap();
        let sig = |ps: &[(Module, usize)]| {
            let mut v: Vec<(usize, usize)> = ps.iter().map(|(m, c)| (m.dim(), *c)).collect();
            v.sort();
            v
        };
        assert_eq!(sig(&parts), sig(&again));

        // rad(kQ (x) A) = rad(kQ) (x) A + kQ (x) rad(A), in the path-major
        // tensor basis
        for base in [dual_numbers(), Algebra::truncated_polynomial(Field::Prime(3), 3).unwrap()] {
            let f = base.field();
            let kq = Algebra::path_algebra(&q, f).unwrap();
            let lambda = monrep::lambda_algebra(&q, &base).unwrap();
            let rad_l = lambda.radical().unwrap().clone();
            let rad_kq = kq.radical().unwrap();
            let rad_a = base.radical().unwrap();
            let mut cols: Vec<Matrix> = Vec::new();
            for j in 0..rad_kq.cols() {
                let u = rad_kq.column(j);
                for k in 0..base.dim() {
                    cols.push(u.kron(&Matrix::identity(f, base.dim()).column(k)));
                }
            }
            for i in 0..kq.dim() {
                let e = Matrix::identity(f, kq.dim()).column(i);
                for j in 0..rad_a.cols() {
                    cols.push(e.kron(&rad_a.column(j)));
                }
            }
            let span = Matrix::hstack(f, lambda.dim(), &cols.iter().collect::<Vec<_>>());
            let both = Matrix::hstack(f, lambda.dim(), &[&span, &rad_l]);
            let r = rad_l.rank();
            assert_eq!(span.rank(), r, "structural radical span has the wrong rank");
            assert_eq!(both.rank(), r, "spans differ");
        }

        // verdicts serialize byte-identically under a fixed seed
        let t = Module::regular(&a, Side::Left);
        let v1 = cotilt_transfer_check(&q, &t, 8, 0).unwrap();
        let v2 = cotilt_transfer_check(&q, &t, 8, 0).unwrap();
        let s1 = json::to_canonical_string(&serde_json::to_value(&v1).unwrap());
        let s2 = json::to_canonical_string(&serde_json::to_value(&v2).unwrap());
        assert_eq!(s1, s2);
        let w1 = tiltperp::reciprocity_check(&q, &t, &panel.reps[..3], 8, 5).unwrap();
        let w2 = tiltperp::reciprocity_check(&q, &t, &panel.reps[..3], 8, 5).unwrap();
        assert_eq!(
            json::to_canonical_string(&serde_json::to_value(&w1).unwrap()),
            json::to_canonical_string(&serde_json::to_value(&w2).unwrap())
        );

        // sanity on the verdict cutoff map type used above
        let _: BTreeMap<String, u64> = v1.cutoffs;
    });
}

// keep the generator/cogenerator entry points exercised from the outside
#[test]
fn certificate_checks_are_reachable() {
    let q = a2();
    let a = dual_numbers();
    let panel = dual_panel();
    let (_, m) = monic_generator(&panel);
    assert!(fintype::is_generator(&m).unwrap().is_holds());
    assert!(fintype::is_relative_cogenerator_mon(&q, &a, &m).unwrap().is_holds());
    let da = Module::regular(&a, Side::Right).dual();
    let (_, cot) = kq_tensor(&q, &da).unwrap();
    assert!(add_membership(&cot, &m).unwrap());
}
