//! Univariate polynomials over `Q(i)`, enough for characteristic and
//! minimal polynomials and squarefree reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactMatrix, Scalar, Subspace};

/// Coefficients stored lowest degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::new(vec![Scalar::one()])
    }

    /// `t - root`
    pub fn linear(root: &Scalar) -> Self {
        Poly::new(vec![-root, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = l.inv().expect("leading coefficient nonzero");
                Poly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_int(k as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Scalar::zero();
        Poly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + other.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Scalar::zero();
        Poly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) - other.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Scalar::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic. Over a field of characteristic zero this has
    /// the same roots as `p`, each simple.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &ExactMatrix) -> ExactMatrix {
        let n = m.rows();
        let mut acc = ExactMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &ExactMatrix::identity(n).scale(c);
        }
        acc
    }

    /// Rational roots (with multiplicity) when every coefficient is real.
    ///
    /// Uses the rational root theorem on the integer-scaled polynomial.
    /// Returns `None` if a coefficient is non-real or the integers involved
    /// are too large to enumerate divisors by trial division.
    pub fn rational_roots(&self) -> Option<Vec<(BigRational, usize)>> {
        if self.coeffs.iter().any(|c| !c.is_real()) {
            return None;
        }
        let mut p = self.clone();
        let mut roots = Vec::new();
        // zero root
        let mut zero_mult = 0;
        while p.coeffs.first().is_some_and(Scalar::is_zero) {
            p.coeffs.remove(0);
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((BigRational::zero(), zero_mult));
        }
        if p.degree().unwrap_or(0) == 0 {
            return Some(roots);
        }
        let lcm = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.re.denom()));
        let ints: Vec<BigInt> = p.coeffs.iter().map(|c| (&c.re * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let lead = ints.last().unwrap().abs().to_u64()?;
        let constant = ints[0].abs().to_u64()?;
        if lead > 1_000_000_000_000 || constant > 1_000_000_000_000 {
            return None;
        }
        let nums = divisors(constant);
        let dens = divisors(lead);
        let mut candidates: Vec<BigRational> = Vec::new();
        for &n in &nums {
            for &d in &dens {
                for sign in [1i64, -1] {
                    let r = BigRational::new(BigInt::from(n) * sign, BigInt::from(d));
                    if !candidates.contains(&r) {
                        candidates.push(r);
                    }
                }
            }
        }
        candidates.sort();
        for r in candidates {
            let lin = Poly::linear(&Scalar::from_real(r.clone()));
            let mut mult = 0;
            loop {
                let (q, rem) = p.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                p = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
            if p.degree() == Some(0) {
                break;
            }
        }
        Some(roots)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Characteristic polynomial `det(tI - m)` by Faddeev-LeVerrier.
pub fn characteristic_polynomial(m: &ExactMatrix) -> Poly {
    let n = m.rows();
    assert!(m.is_square(), "characteristic polynomial of non-square matrix");
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut aux = ExactMatrix::zeros(n, n);
    for k in 1..=n {
        aux = &(m * &aux) + &ExactMatrix::identity(n).scale(&coeffs[n - k + 1]);
        let t = (m * &aux).trace();
        coeffs[n - k] = -(&t / &Scalar::from_int(k as i64));
    }
    Poly::new(coeffs)
}

/// Minimal polynomial from the first linear dependence among `I, m, m^2, ...`.
pub fn minimal_polynomial(m: &ExactMatrix) -> Poly {
    let n = m.rows();
    let mut powers: Vec<Vec<Scalar>> = vec![ExactMatrix::identity(n).flatten()];
    let mut cur = ExactMatrix::identity(n);
    for d in 1..=n {
        cur = &cur * m;
        let flat = cur.flatten();
        let span = Subspace::from_vectors(n * n, &powers).expect("uniform length");
        if span.coordinates(&flat).is_some() {
            // solve sum_k c_k m^k = m^d via columns = powers
            let cols = powers.len();
            let mut sys = ExactMatrix::zeros(n * n, cols + 1);
            for (k, p) in powers.iter().enumerate() {
                for (r, x) in p.iter().enumerate() {
                    sys[(r, k)] = x.clone();
                }
            }
            for (r, x) in flat.iter().enumerate() {
                sys[(r, cols)] = x.clone();
            }
            let (red, pivots) = sys.rref_with_pivots();
            let mut coeffs = vec![Scalar::zero(); d + 1];
            for (row, &p) in pivots.iter().enumerate() {
                coeffs[p] = -&red[(row, cols)];
            }
            coeffs[d] = Scalar::one();
            return Poly::new(coeffs);
        }
        powers.push(flat);
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    #[test]
    fn gcd_and_squarefree() {
        // (t-1)^2 (t+2)
        let f = p(&[2, -3, 0, 1]);
        assert!(!f.is_squarefree());
        assert_eq!(f.squarefree_part(), p(&[-2, 1, 1]));
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
    }

    #[test]
    fn charpoly_and_minpoly() {
        let m = ExactMatrix::from_ints(&[&[2, 1], &[0, 2]]);
        assert_eq!(characteristic_polynomial(&m), p(&[4, -4, 1]));
        assert_eq!(minimal_polynomial(&m), p(&[4, -4, 1]));
        let d = ExactMatrix::from_ints(&[&[2, 0], &[0, 2]]);
        assert_eq!(minimal_polynomial(&d), p(&[-2, 1]));
        assert!(characteristic_polynomial(&m).eval_matrix(&m).is_zero());
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // 4 (t - 1/2)^2 (t + 3) t
        let f = Poly::new(vec![Scalar::zero()])
            .add(&p(&[0, 1]))
            .mul(&p(&[-1, 2]))
            .mul(&p(&[-1, 2]))
            .mul(&p(&[3, 1]));
        let roots = f.rational_roots().unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&(BigRational::new(1.into(), 2.into()), 2)));
        assert!(roots.contains(&(BigRational::from_integer((-3).into()), 1)));
        assert!(roots.contains(&(BigRational::zero(), 1)));
        // t^2 - 2 has none
        assert!(p(&[-2, 0, 1]).rational_roots().unwrap().is_empty());
    }
}
