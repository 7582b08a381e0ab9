//! Univariate polynomials over F_p, just enough for module decomposition:
//! minimal polynomials of matrices, squarefree parts, and Berlekamp splitting
//! of squarefree polynomials into coprime factors.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// Dense coefficients, lowest degree first, always trimmed; entries reduced
/// mod p. The zero polynomial has empty coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> FpPoly {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> FpPoly {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn constant(p: u64, c: u64) -> FpPoly {
        FpPoly::new(p, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 nowhere, so check
    /// `is_zero` first where it matters.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u64 {
        *self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    fn inv_mod(&self, a: u64) -> u64 {
        // extended Euclid, p prime
        let p = self.p as i128;
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (p, a as i128 % p);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        assert_eq!(r, 1, "inverse of non-unit mod p");
        t.rem_euclid(p) as u64
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.inv_mod(self.lead());
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .map(|&c| ((c as u128 * inv as u128) % self.p as u128) as u64)
                .collect(),
        )
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = (a + b) % self.p;
        }
        FpPoly::new(self.p, out)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = (a + self.p - b) % self.p;
        }
        FpPoly::new(self.p, out)
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let v = (out[i + j] as u128 + a as u128 * b as u128) % self.p as u128;
                out[i + j] = v as u64;
            }
        }
        FpPoly::new(self.p, out)
    }

    /// (quotient, remainder); divisor must be nonzero.
    pub fn divrem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let p = self.p;
        let dlead_inv = self.inv_mod(divisor.lead());
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let qdeg = rem.len() - divisor.coeffs.len();
        let mut quot = vec![0u64; qdeg + 1];
        for k in (0..=qdeg).rev() {
            let top = rem[k + divisor.coeffs.len() - 1];
            if top == 0 {
                continue;
            }
            let q = ((top as u128 * dlead_inv as u128) % p as u128) as u64;
            quot[k] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let sub = (q as u128 * d as u128) % p as u128;
                rem[k + j] = ((rem[k + j] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        (FpPoly::new(p, quot), FpPoly::new(p, rem))
    }

    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| ((i as u128 % self.p as u128) * c as u128 % self.p as u128) as u64)
            .collect();
        FpPoly::new(self.p, out)
    }

    /// Evaluate at a matrix over Field::Prime(p) by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let f = m.field();
        let n = m.rows();
        let mut acc = Matrix::zero(f, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m).unwrap();
            if c != 0 {
                acc = acc.add(&Matrix::identity(f, n).scale(&Scalar::Fp(c))).unwrap();
            }
        }
        acc
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> FpPoly {
        let f = self.monic();
        if f.deg() == 0 {
            return FpPoly::constant(self.p, 1);
        }
        let d = f.derivative();
        if d.is_zero() {
            // f = h(x^p) = (p-th root)(x)^p since Frobenius fixes F_p
            let root: Vec<u64> = f.coeffs.iter().step_by(self.p as usize).copied().collect();
            return FpPoly::new(self.p, root).squarefree_part();
        }
        let g = f.gcd(&d);
        if g.deg() == 0 {
            return f;
        }
        let w = f.divrem(&g).0; // distinct factors with multiplicity prime to p
        // strip all w-factors from g; the leftover is a p-th power
        let mut rest = g;
        loop {
            let c = rest.gcd(&w);
            if c.deg() == 0 {
                break;
            }
            rest = rest.divrem(&c).0;
        }
        if rest.deg() == 0 {
            w
        } else {
            w.mul(&rest.squarefree_part()).monic()
        }
    }

    /// Splits a squarefree polynomial into two coprime nonconstant factors,
    /// or reports it irreducible (None). Deterministic.
    pub fn coprime_split(&self) -> Option<(FpPoly, FpPoly)> {
        let f = self.monic();
        let d = f.deg();
        if d <= 1 {
            return None;
        }
        let p = self.p;
        let fld = Field::prime(p).expect("modulus must be prime");
        // Frobenius matrix on F_p[x]/(f): column i is x^{ip} mod f
        let mut frob = Matrix::zero(fld, d, d);
        let x = FpPoly::new(p, vec![0, 1]);
        let xp = {
            // x^p mod f by square-and-multiply
            let mut acc = FpPoly::constant(p, 1);
            let mut base = x;
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc.mul(&base).divrem(&f).1;
                }
                e >>= 1;
                if e > 0 {
                    base = base.mul(&base).divrem(&f).1;
                }
            }
            acc
        };
        let mut power = FpPoly::constant(p, 1); // x^{ip} mod f
        for i in 0..d {
            for (j, &c) in power.coeffs.iter().enumerate() {
                frob.set(j, i, Scalar::Fp(c));
            }
            power = power.mul(&xp).divrem(&f).1;
        }
        let id = Matrix::identity(fld, d);
        let kernel = frob.sub(&id).unwrap().kernel_basis();
        if kernel.cols() <= 1 {
            return None; // Berlekamp: fixed space dim = number of factors
        }
        // a fixed element that is not a scalar
        for c in 0..kernel.cols() {
            let col = kernel.column(c);
            let coeffs: Vec<u64> = (0..d)
                .map(|i| match col.get(i, 0) {
                    Scalar::Fp(v) => *v,
                    Scalar::Rat(_) => unreachable!(),
                })
                .collect();
            let v = FpPoly::new(p, coeffs);
            if v.deg() == 0 {
                continue;
            }
            for s in 0..p {
                let g = f.gcd(&v.sub(&FpPoly::constant(p, s)));
                if g.deg() > 0 && g.deg() < f.deg() {
                    let rest = f.divrem(&g).0.monic();
                    return Some((g, rest));
                }
            }
        }
        None
    }
}

/// Monic minimal polynomial of a square matrix over F_p.
pub fn minimal_polynomial(m: &Matrix) -> Result<FpPoly> {
    let p = match m.field() {
        Field::Prime(p) => p,
        Field::Rational => return Err(Error::Unsupported("minimal polynomial needs a prime field".into())),
    };
    let f = m.field();
    let n = m.rows();
    if n == 0 {
        return Ok(FpPoly::new(p, vec![0, 1])); // convention: x annihilates the empty matrix
    }
    let mut powers: Vec<Matrix> = vec![Matrix::identity(f, n).vec()];
    let mut current = Matrix::identity(f, n);
    loop {
        current = current.mul(m).unwrap();
        let v = current.vec();
        let refs: Vec<&Matrix> = powers.iter().collect();
        let span = Matrix::hstack(f, n * n, &refs);
        if let Some(sol) = span.solve(&v)? {
            // x^k = sum c_i x^i  =>  min poly = x^k - sum c_i x^i
            let k = powers.len();
            let mut coeffs = vec![0u64; k + 1];
            coeffs[k] = 1;
            for (i, c) in coeffs.iter_mut().enumerate().take(k) {
                if let Scalar::Fp(val) = sol.get(i, 0) {
                    *c = (p - val % p) % p;
                }
            }
            return Ok(FpPoly::new(p, coeffs));
        }
        powers.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn divrem_round_trip() {
        let p = 5;
        let a = FpPoly::new(p, vec![1, 2, 3, 4]);
        let b = FpPoly::new(p, vec![2, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg() < b.deg() || r.is_zero());
    }

    #[test]
    fn gcd_of_known_factors() {
        let p = 2;
        let x1 = FpPoly::new(p, vec![1, 1]); // x+1
        let x = FpPoly::new(p, vec![0, 1]);
        let f = x1.mul(&x).mul(&x1);
        assert_eq!(f.gcd(&x1.mul(&x1)), x1.mul(&x1).monic());
    }

    #[test]
    fn squarefree_of_power() {
        let p = 2;
        let x1 = FpPoly::new(p, vec![1, 1]);
        let f = x1.mul(&x1).mul(&x1).mul(&x1); // (x+1)^4: derivative vanishes
        assert_eq!(f.squarefree_part(), x1);
        let x = FpPoly::new(p, vec![0, 1]);
        let g = x.mul(&x1).mul(&x1); // x(x+1)^2
        assert_eq!(g.squarefree_part(), x.mul(&x1));
    }

    #[test]
    fn split_reducible() {
        let p = 2;
        let x = FpPoly::new(p, vec![0, 1]);
        let x1 = FpPoly::new(p, vec![1, 1]);
        let f = x.mul(&x1);
        let (a, b) = f.coprime_split().unwrap();
        assert_eq!(a.mul(&b), f);
        assert_eq!(a.gcd(&b).deg(), 0);
    }

    #[test]
    fn irreducible_not_split() {
        // x^2 + x + 1 over F_2
        let f = FpPoly::new(2, vec![1, 1, 1]);
        assert!(f.coprime_split().is_none());
        // x^3 + x + 1 over F_2
        let f = FpPoly::new(2, vec![1, 1, 0, 1]);
        assert!(f.coprime_split().is_none());
    }

    #[test]
    fn min_poly_nilpotent_jordan() {
        let m = Matrix::from_i64_rows(f2(), &[&[0, 0], &[1, 0]]);
        let mu = minimal_polynomial(&m).unwrap();
        assert_eq!(mu, FpPoly::new(2, vec![0, 0, 1])); // x^2
    }

    #[test]
    fn min_poly_identity() {
        let m = Matrix::identity(f2(), 3);
        assert_eq!(minimal_polynomial(&m).unwrap(), FpPoly::new(2, vec![1, 1]));
    }

    #[test]
    fn min_poly_annihilates() {
        let m = Matrix::from_i64_rows(Field::prime(3).unwrap(), &[&[1, 2, 0], &[0, 1, 1], &[0, 0, 2]]);
        let mu = minimal_polynomial(&m).unwrap();
        assert!(mu.eval_matrix(&m).is_zero());
    }
}
