//! Clifford algebra Cl(p,q) over a dense basis-blade representation.
//!
//! A multivector stores one coefficient per canonical basis blade. Blade index
//! `b` is a bitset: bit `i` set means `e_{i+1}` is a factor, and factors are
//! always kept in ascending index order. The first `p` basis vectors square to
//! `+1`, the remaining `q` square to `-1`.
//!
//! All products are derived from the geometric product of basis blades by
//! grade selection, so the outer product, the contractions and the
//! Hestenes inner product share one sign computation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest supported dimension `p + q`.
pub const MAX_DIM: usize = 8;

/// Relative tolerance used by blade and null tests.
pub const BLADE_TOL: f64 = 1e-9;

/// Metric signature of a real Clifford algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    p: u8,
    q: u8,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q > MAX_DIM {
            return Err(Error::DimensionTooLarge(p + q));
        }
        Ok(Self {
            p: p as u8,
            q: q as u8,
        })
    }

    /// Euclidean 3-space, Cl(3,0).
    pub const fn euclidean3() -> Self {
        Self { p: 3, q: 0 }
    }

    /// The conformal model of Euclidean 3-space, Cl(4,1).
    pub const fn conformal3() -> Self {
        Self { p: 4, q: 1 }
    }

    pub fn p(&self) -> usize {
        self.p as usize
    }

    pub fn q(&self) -> usize {
        self.q as usize
    }

    pub fn dim(&self) -> usize {
        (self.p + self.q) as usize
    }

    /// Number of basis blades, `2^n`.
    pub fn blade_count(&self) -> usize {
        1 << self.dim()
    }

    /// Bitmask of the basis vectors that square to `-1`.
    fn negative_mask(&self) -> usize {
        ((1usize << self.q) - 1) << self.p
    }

    /// Geometric product of two basis blades: the resulting blade index and
    /// its sign (`+1`, `-1`, or `0` never occurs for a non-degenerate metric).
    pub fn blade_product(&self, a: usize, b: usize) -> (usize, f64) {
        let mut swaps = 0u32;
        let mut shifted = a >> 1;
        while shifted != 0 {
            swaps += (shifted & b).count_ones();
            shifted >>= 1;
        }
        let negatives = (a & b & self.negative_mask()).count_ones();
        let sign = if (swaps + negatives) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        (a ^ b, sign)
    }
}

/// Grade of the basis blade with bitset index `blade`.
#[inline]
pub fn blade_grade(blade: usize) -> usize {
    blade.count_ones() as usize
}

/// Result of [`Multivector::blade_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BladeCheck {
    pub is_blade: bool,
    pub grade: usize,
    pub square: f64,
}

/// A general element of Cl(p,q).
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector {
    sig: Signature,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            coeffs: vec![0.0; sig.blade_count()],
        }
    }

    pub fn scalar(sig: Signature, value: f64) -> Self {
        let mut m = Self::zero(sig);
        m.coeffs[0] = value;
        m
    }

    /// `value` times the basis blade with bitset index `blade`.
    pub fn blade(sig: Signature, blade: usize, value: f64) -> Self {
        let mut m = Self::zero(sig);
        m.coeffs[blade] = value;
        m
    }

    /// Basis vector `e_{k+1}` (zero-based `k`).
    pub fn basis_vector(sig: Signature, k: usize) -> Self {
        Self::blade(sig, 1 << k, 1.0)
    }

    /// Grade-1 element from its components.
    pub fn vector(sig: Signature, components: &[f64]) -> Result<Self> {
        if components.len() != sig.dim() {
            return Err(Error::CoefficientCount {
                expected: sig.dim(),
                found: components.len(),
            });
        }
        let mut m = Self::zero(sig);
        for (k, &x) in components.iter().enumerate() {
            m.coeffs[1 << k] = x;
        }
        Ok(m)
    }

    pub fn from_coeffs(sig: Signature, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != sig.blade_count() {
            return Err(Error::CoefficientCount {
                expected: sig.blade_count(),
                found: coeffs.len(),
            });
        }
        Ok(Self { sig, coeffs })
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, blade: usize) -> f64 {
        self.coeffs[blade]
    }

    pub fn set_coeff(&mut self, blade: usize, value: f64) {
        self.coeffs[blade] = value;
    }

    /// Grade-0 coefficient.
    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Largest absolute coefficient.
    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// True when every coefficient is at most `tol` in magnitude.
    pub fn is_zero(&self, tol: f64) -> bool {
        self.norm_inf() <= tol
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    fn check_sig(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch {
                left: self.sig,
                right: other.sig,
            });
        }
        Ok(())
    }

    /// Bilinear extension of the basis-blade product, keeping only the terms
    /// for which `keep(grade_a, grade_b, grade_result)` holds.
    fn product_where(
        &self,
        other: &Self,
        keep: impl Fn(usize, usize, usize) -> bool,
    ) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = Self::zero(self.sig);
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let ga = blade_grade(a);
            for (b, &y) in other.coeffs.iter().enumerate() {
                if y == 0.0 {
                    continue;
                }
                let (blade, sign) = self.sig.blade_product(a, b);
                if keep(ga, blade_grade(b), blade_grade(blade)) {
                    out.coeffs[blade] += sign * x * y;
                }
            }
        }
        Ok(out)
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        self.product_where(other, |_, _, _| true)
    }

    /// `⟨A⟩_k`; zero for grades outside `0..=n`.
    pub fn grade(&self, k: i64) -> Self {
        let mut out = Self::zero(self.sig);
        if k < 0 || k as usize > self.sig.dim() {
            return out;
        }
        for (b, &c) in self.coeffs.iter().enumerate() {
            if blade_grade(b) == k as usize {
                out.coeffs[b] = c;
            }
        }
        out
    }

    /// `A * B = ⟨AB⟩`, no reversion.
    pub fn scalar_product(&self, other: &Self) -> Result<f64> {
        self.check_sig(other)?;
        let mut s = 0.0;
        for (b, &x) in self.coeffs.iter().enumerate() {
            let y = other.coeffs[b];
            if x != 0.0 && y != 0.0 {
                s += self.sig.blade_product(b, b).1 * x * y;
            }
        }
        Ok(s)
    }

    /// `Σ ⟨⟨A⟩_k ⟨B⟩_l⟩_{k+l}`.
    pub fn outer(&self, other: &Self) -> Result<Self> {
        self.product_where(other, |k, l, g| g == k + l)
    }

    /// `Σ ⟨⟨A⟩_k ⟨B⟩_l⟩_{l-k}`.
    pub fn left_contraction(&self, other: &Self) -> Result<Self> {
        self.product_where(other, |k, l, g| l >= k && g == l - k)
    }

    /// `Σ ⟨⟨A⟩_k ⟨B⟩_l⟩_{k-l}`.
    pub fn right_contraction(&self, other: &Self) -> Result<Self> {
        self.product_where(other, |k, l, g| k >= l && g == k - l)
    }

    /// Inner product with the grade-0 exception: terms where either factor is
    /// a scalar vanish, otherwise `⟨⟨A⟩_k ⟨B⟩_l⟩_{|k-l|}`.
    pub fn hestenes_inner(&self, other: &Self) -> Result<Self> {
        self.product_where(other, |k, l, g| k != 0 && l != 0 && g == k.abs_diff(l))
    }

    /// Reversion: the grade-k part picks up `(-1)^{k(k-1)/2}`.
    pub fn reverse(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(b, &c)| {
                let k = blade_grade(b);
                if (k * k.saturating_sub(1) / 2) % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        Self {
            sig: self.sig,
            coeffs,
        }
    }

    /// Grade with the most weight (sum of squared coefficients).
    pub fn dominant_grade(&self) -> usize {
        let mut weight = [0.0f64; MAX_DIM + 1];
        for (b, &c) in self.coeffs.iter().enumerate() {
            weight[blade_grade(b)] += c * c;
        }
        let mut best = 0;
        for k in 1..=self.sig.dim() {
            if weight[k] > weight[best] {
                best = k;
            }
        }
        best
    }

    /// Tests whether the element is homogeneous and squares to a pure scalar.
    ///
    /// Both checks use the relative tolerance [`BLADE_TOL`] scaled by the
    /// square of the largest coefficient.
    pub fn blade_check(&self) -> BladeCheck {
        let scale = self.norm_inf();
        let grade = self.dominant_grade();
        if scale == 0.0 {
            return BladeCheck {
                is_blade: true,
                grade: 0,
                square: 0.0,
            };
        }
        let homogeneous = self
            .coeffs
            .iter()
            .enumerate()
            .all(|(b, &c)| blade_grade(b) == grade || c.abs() <= BLADE_TOL * scale);
        let sq = self * self;
        let tol = BLADE_TOL * scale * scale;
        let scalar_only = sq.coeffs.iter().skip(1).all(|c| c.abs() <= tol);
        BladeCheck {
            is_blade: homogeneous && scalar_only,
            grade,
            square: sq.scalar_part(),
        }
    }

    /// `A / (A A)` for a blade with non-null square.
    pub fn blade_inverse(&self) -> Result<Self> {
        let check = self.blade_check();
        let scale = self.norm_inf();
        if !check.is_blade {
            return Err(Error::NotABlade);
        }
        if check.square.abs() <= BLADE_TOL * scale * scale {
            return Err(Error::NullBlade);
        }
        Ok(self.scale(1.0 / check.square))
    }

    /// Human readable name of a basis blade, e.g. `e12` or `e1p`.
    pub fn blade_name(sig: Signature, blade: usize) -> String {
        if blade == 0 {
            return String::new();
        }
        let conformal = sig == Signature::conformal3();
        let mut s = String::from("e");
        for k in 0..sig.dim() {
            if blade & (1 << k) != 0 {
                match (conformal, k) {
                    (true, 3) => s.push('p'),
                    (true, 4) => s.push('m'),
                    _ => s.push_str(&(k + 1).to_string()),
                }
            }
        }
        s
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut order: Vec<usize> = (0..self.coeffs.len()).collect();
        order.sort_by_key(|&b| (blade_grade(b), b));
        let mut first = true;
        for b in order {
            let c = self.coeffs[b];
            if c == 0.0 {
                continue;
            }
            let name = Self::blade_name(self.sig, b);
            let mag = c.abs();
            match (first, c < 0.0) {
                (true, false) => write!(f, "{mag:?}")?,
                (true, true) => write!(f, "-{mag:?}")?,
                (false, false) => write!(f, " + {mag:?}")?,
                (false, true) => write!(f, " - {mag:?}")?,
            }
            if !name.is_empty() {
                write!(f, " {name}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Operator forms panic on signature mismatch; the named methods return errors.

impl Add for &Multivector {
    type Output = Multivector;

    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.sig, rhs.sig, "signature mismatch");
        Multivector {
            sig: self.sig,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Multivector {
    type Output = Multivector;

    fn sub(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.sig, rhs.sig, "signature mismatch");
        Multivector {
            sig: self.sig,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul for &Multivector {
    type Output = Multivector;

    fn mul(self, rhs: &Multivector) -> Multivector {
        self.geometric_product(rhs).expect("signature mismatch")
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;

    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;

    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}
