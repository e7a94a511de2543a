//! Truncated formal power series over exact coefficient rings, plus the
//! generating-function catalog used as the third counting engine.
//!
//! Series are univariate in `x`. Bivariate series are represented as series
//! in `x` whose coefficients are polynomials in `y` over the rationals; the
//! `y`-degree of every catalog entry is bounded by the `x`-degree, so no
//! separate `y`-truncation is needed.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact coefficient ring for truncated series.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Exact division; `None` when `rhs` does not divide `self`.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
    fn from_int(v: i64) -> Self;
    /// Multiplication by a rational scalar.
    fn scale_rat(&self, r: &BigRational) -> Self;
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn scale_rat(&self, r: &BigRational) -> Self {
        self * r
    }
}

/// A univariate polynomial in `y` with rational coefficients, kept
/// normalized (no trailing zeros).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyY {
    coeffs: Vec<BigRational>,
}

impl PolyY {
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        PolyY { coeffs }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(alloc::vec![c])
    }

    /// The indeterminate `y`.
    pub fn y() -> Self {
        PolyY {
            coeffs: alloc::vec![Coeff::zero(), Coeff::one()],
        }
    }

    /// Coefficient of `y^k`.
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(Zero::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Evaluation at `y = r`.
    pub fn eval(&self, r: &BigRational) -> BigRational {
        let mut acc: BigRational = Zero::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * r + c;
        }
        acc
    }

    /// Formal derivative in `y`.
    pub fn dy(&self) -> PolyY {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
            .collect();
        PolyY::from_coeffs(coeffs)
    }
}

impl Coeff for PolyY {
    fn zero() -> Self {
        PolyY { coeffs: Vec::new() }
    }
    fn one() -> Self {
        PolyY::constant(One::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyY::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
    fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyY::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
    fn neg(&self) -> Self {
        PolyY {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Coeff::zero();
        }
        let mut coeffs = alloc::vec![<BigRational as Zero>::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PolyY::from_coeffs(coeffs)
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Coeff::zero());
        }
        let dr = rhs.coeffs.len() - 1;
        if self.coeffs.len() < rhs.coeffs.len() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = alloc::vec![<BigRational as Zero>::zero(); rem.len() - dr];
        let lead = &rhs.coeffs[dr];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dr] / lead;
            if !Zero::is_zero(&q) {
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    let delta = &q * b;
                    rem[k + j] -= delta;
                }
            }
            quot[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(PolyY::from_coeffs(quot))
        } else {
            None
        }
    }
    fn from_int(v: i64) -> Self {
        PolyY::constant(Coeff::from_int(v))
    }
    fn scale_rat(&self, r: &BigRational) -> Self {
        PolyY::from_coeffs(self.coeffs.iter().map(|c| c * r).collect())
    }
}

impl fmt::Display for PolyY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !One::is_one(&a) {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        f.write_str("y")?;
                    } else {
                        write!(f, "y^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Series arithmetic errors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SeriesError {
    DivisionByZero,
    /// Dividend has a nonzero coefficient below the divisor's valuation.
    InsufficientValuation,
    /// A coefficient was not exactly divisible by the divisor's leading
    /// coefficient (would falsify a closed form).
    NonDivisibleCoefficient { xpow: usize },
    /// `sqrt` needs constant term 1.
    ConstantTermNotOne,
    CoefficientOutOfRange { xpow: usize },
    UnknownCatalogName(String),
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::DivisionByZero => f.write_str("division by the zero series"),
            SeriesError::InsufficientValuation => {
                f.write_str("dividend valuation below divisor valuation")
            }
            SeriesError::NonDivisibleCoefficient { xpow } => {
                write!(f, "coefficient of x^{xpow} is not exactly divisible")
            }
            SeriesError::ConstantTermNotOne => f.write_str("sqrt requires constant term 1"),
            SeriesError::CoefficientOutOfRange { xpow } => {
                write!(f, "coefficient x^{xpow} beyond truncation order")
            }
            SeriesError::UnknownCatalogName(name) => {
                write!(f, "unknown generating function '{name}'")
            }
        }
    }
}

/// A formal power series truncated at order `N`: coefficients of
/// `x^0 ..= x^N`.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: alloc::vec![C::zero(); order + 1],
        }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// `c * x^pow`.
    pub fn monomial(c: C, pow: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if pow <= order {
            s.coeffs[pow] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, xpow: usize) -> Result<&C, SeriesError> {
        self.coeffs
            .get(xpow)
            .ok_or(SeriesError::CoefficientOutOfRange { xpow })
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops coefficients above `order`.
    pub fn truncate(mut self, order: usize) -> Self {
        assert!(order < self.coeffs.len(), "cannot extend a truncated series");
        self.coeffs.truncate(order + 1);
        self
    }

    fn common_order(&self, rhs: &Self) -> usize {
        self.order().min(rhs.order())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.common_order(rhs);
        TruncatedSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k].add(&rhs.coeffs[k])).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.common_order(rhs);
        TruncatedSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k].sub(&rhs.coeffs[k])).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(C::neg).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.common_order(rhs);
        let mut coeffs = alloc::vec![C::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&self.coeffs[i].mul(&rhs.coeffs[j]));
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Multiplication by `x^k` at the same truncation order (top
    /// coefficients fall off).
    pub fn shift_by_x_power(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = alloc::vec![C::zero(); n + 1];
        for i in k..=n {
            coeffs[i] = self.coeffs[i - k].clone();
        }
        TruncatedSeries { coeffs }
    }

    /// Exact quotient. If the divisor has valuation `v`, the dividend must
    /// vanish below `x^v` and the result is truncated at `N - v`. Every
    /// intermediate coefficient must be exactly divisible by the divisor's
    /// lowest coefficient.
    pub fn div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        let v = rhs.valuation().ok_or(SeriesError::DivisionByZero)?;
        if self.coeffs.iter().take(v).any(|c| !c.is_zero()) {
            return Err(SeriesError::InsufficientValuation);
        }
        let n = self.common_order(rhs) - v;
        let lead = &rhs.coeffs[v];
        let mut quot: Vec<C> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs.get(k + v).cloned().unwrap_or_else(C::zero);
            for (i, q) in quot.iter().enumerate() {
                acc = acc.sub(&q.mul(&rhs.coeffs[v + k - i]));
            }
            let q = acc
                .exact_div(lead)
                .ok_or(SeriesError::NonDivisibleCoefficient { xpow: k })?;
            quot.push(q);
        }
        Ok(TruncatedSeries { coeffs: quot })
    }

    /// The square root with constant term 1, by exact coefficient
    /// recursion.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != C::one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let n = self.order();
        let two = C::from_int(2);
        let mut root: Vec<C> = Vec::with_capacity(n + 1);
        root.push(C::one());
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..k {
                acc = acc.sub(&root[i].mul(&root[k - i]));
            }
            let q = acc
                .exact_div(&two)
                .ok_or(SeriesError::NonDivisibleCoefficient { xpow: k })?;
            root.push(q);
        }
        Ok(TruncatedSeries { coeffs: root })
    }

    /// Formal derivative in `x` (order drops by one).
    pub fn derivative_x(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&C::from_int(k as i64)))
            .collect();
        TruncatedSeries { coeffs }
    }

    /// `x -> r*x`: scales the coefficient of `x^k` by `r^k`.
    pub fn scale_x(&self, r: &BigRational) -> Self {
        let mut pow = <BigRational as One>::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c.scale_rat(&pow);
                pow *= r;
                out
            })
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl TruncatedSeries<PolyY> {
    /// Formal derivative in `y`.
    pub fn derivative_y(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(PolyY::dy).collect(),
        }
    }

    /// Exact substitution `y = r`.
    pub fn subst_y(&self, r: &BigRational) -> TruncatedSeries<BigRational> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|p| p.eval(r)).collect(),
        }
    }

    /// Coefficient of `x^xpow y^ypow`.
    pub fn coeff_xy(&self, xpow: usize, ypow: usize) -> Result<BigRational, SeriesError> {
        Ok(self.coeff(xpow)?.coeff(ypow))
    }
}

/// Names of the cataloged generating functions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GfName {
    /// Catalan generating function `C(x)`.
    C,
    /// Bivariate `E(x,y)`: 123-avoiders by size and descents.
    E,
    /// Bivariate `G(x,y)`: permutations with a 123 pattern whose reduction
    /// avoids 123, by size and descents.
    G,
    /// Bivariate Narayana generating function `N(x,y)`.
    N,
    /// Bivariate `L(x,y)`: the 213 analogue of `G`.
    L,
    /// Active leaves for the strict `x < y < z` condition.
    A3,
    /// Inactive leaves for the strict condition.
    B3,
    /// Total leaves for the strict condition.
    W3,
    /// Active leaves for the weak `x <= y <= z` condition.
    A4,
    B4,
    W4,
    /// Active leaves for the mixed `x <= y < z` condition.
    A5,
    B5,
    W5,
}

impl GfName {
    pub const ALL: [GfName; 14] = [
        GfName::C,
        GfName::E,
        GfName::G,
        GfName::N,
        GfName::L,
        GfName::A3,
        GfName::B3,
        GfName::W3,
        GfName::A4,
        GfName::B4,
        GfName::W4,
        GfName::A5,
        GfName::B5,
        GfName::W5,
    ];

    pub fn parse(name: &str) -> Result<GfName, SeriesError> {
        let canon = name.to_ascii_uppercase();
        GfName::ALL
            .iter()
            .copied()
            .find(|g| g.as_str() == canon)
            .ok_or_else(|| SeriesError::UnknownCatalogName(String::from(name)))
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            GfName::C => "C",
            GfName::E => "E",
            GfName::G => "G",
            GfName::N => "N",
            GfName::L => "L",
            GfName::A3 => "A3",
            GfName::B3 => "B3",
            GfName::W3 => "W3",
            GfName::A4 => "A4",
            GfName::B4 => "B4",
            GfName::W4 => "W4",
            GfName::A5 => "A5",
            GfName::B5 => "B5",
            GfName::W5 => "W5",
        }
    }

    pub fn is_bivariate(&self) -> bool {
        matches!(self, GfName::E | GfName::G | GfName::N | GfName::L)
    }
}

/// A catalog expansion: univariate over rationals or bivariate with
/// polynomial-in-`y` coefficients.
#[derive(Clone, PartialEq, Debug)]
pub enum Gf {
    Univariate(TruncatedSeries<BigRational>),
    Bivariate(TruncatedSeries<PolyY>),
}

impl Gf {
    /// Coefficient of `x^xpow` (and `y^ypow` for bivariate entries;
    /// a bivariate coefficient without `ypow` must be constant in `y`).
    pub fn coeff(&self, xpow: usize, ypow: Option<usize>) -> Result<BigRational, SeriesError> {
        match (self, ypow) {
            (Gf::Univariate(s), None) => s.coeff(xpow).cloned(),
            (Gf::Univariate(s), Some(0)) => s.coeff(xpow).cloned(),
            (Gf::Univariate(_), Some(_)) => Ok(Zero::zero()),
            (Gf::Bivariate(s), Some(d)) => s.coeff_xy(xpow, d),
            (Gf::Bivariate(s), None) => {
                let p = s.coeff(xpow)?;
                assert!(
                    p.degree().unwrap_or(0) == 0,
                    "coefficient of x^{xpow} depends on y"
                );
                Ok(p.coeff(0))
            }
        }
    }
}

// All catalog entries are built at a padded working order so that the
// valuation-reducing divisions still cover the requested order.
const PAD: usize = 4;

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

struct Biv {
    ord: usize,
}

impl Biv {
    fn x(&self) -> TruncatedSeries<PolyY> {
        TruncatedSeries::monomial(PolyY::one(), 1, self.ord)
    }
    fn y(&self) -> TruncatedSeries<PolyY> {
        TruncatedSeries::constant(PolyY::y(), self.ord)
    }
    fn int(&self, v: i64) -> TruncatedSeries<PolyY> {
        TruncatedSeries::constant(PolyY::from_int(v), self.ord)
    }
}

/// `E(x,y) = (1 - 2xy(1+x-xy) - sqrt(1 - 4xy(1+x-xy))) / (2xy^2(1+x-xy))`.
fn expand_e(ord: usize) -> Result<TruncatedSeries<PolyY>, SeriesError> {
    let b = Biv { ord: ord + PAD };
    let (x, y) = (b.x(), b.y());
    let t = b.int(1).add(&x).sub(&x.mul(&y));
    let xyt = x.mul(&y).mul(&t);
    let s = b.int(1).sub(&xyt.scale(&PolyY::from_int(4)));
    let num = b.int(1).sub(&xyt.scale(&PolyY::from_int(2))).sub(&s.sqrt()?);
    let den = x.mul(&y).mul(&y).mul(&t).scale(&PolyY::from_int(2));
    Ok(num.div(&den)?.truncate(ord))
}

/// `G(x,y) = (1 - 4xy(1+x-xy) + 2x^2y - (1-2xy) sqrt(S)) / (2xy^2 sqrt(S))`
/// with `S = 1 - 4xy(1+x-xy)`.
fn expand_g(ord: usize) -> Result<TruncatedSeries<PolyY>, SeriesError> {
    let b = Biv { ord: ord + PAD };
    let (x, y) = (b.x(), b.y());
    let t = b.int(1).add(&x).sub(&x.mul(&y));
    let xy = x.mul(&y);
    let s = b.int(1).sub(&xy.mul(&t).scale(&PolyY::from_int(4)));
    let root = s.sqrt()?;
    let num = s
        .add(&x.mul(&x).mul(&y).scale(&PolyY::from_int(2)))
        .sub(&b.int(1).sub(&xy.scale(&PolyY::from_int(2))).mul(&root));
    let den = xy.mul(&y).mul(&root).scale(&PolyY::from_int(2));
    Ok(num.div(&den)?.truncate(ord))
}

/// Narayana `N(x,y) = (1 - x(y+1) - sqrt(1 - 2x(y+1) + x^2(y-1)^2)) / (2xy)`.
fn expand_n(ord: usize) -> Result<TruncatedSeries<PolyY>, SeriesError> {
    let b = Biv { ord: ord + PAD };
    let (x, y) = (b.x(), b.y());
    let yp1 = y.add(&b.int(1));
    let ym1 = y.sub(&b.int(1));
    let s = b
        .int(1)
        .sub(&x.mul(&yp1).scale(&PolyY::from_int(2)))
        .add(&x.mul(&x).mul(&ym1).mul(&ym1));
    let num = b.int(1).sub(&x.mul(&yp1)).sub(&s.sqrt()?);
    let den = x.mul(&y).scale(&PolyY::from_int(2));
    Ok(num.div(&den)?.truncate(ord))
}

/// `L(x,y)`, combined over the common denominator `2xy sqrt(S5)`:
/// `((x(y+1) - 2(y^2-y)x^4 - 1) sqrt(S5) + (1-xy)^2 + x^2 - 2x) / (2xy sqrt(S5))`
/// with `S5 = 1 - 2x(y+1) + x^2(y-1)^2`.
fn expand_l(ord: usize) -> Result<TruncatedSeries<PolyY>, SeriesError> {
    let b = Biv { ord: ord + PAD };
    let (x, y) = (b.x(), b.y());
    let yp1 = y.add(&b.int(1));
    let ym1 = y.sub(&b.int(1));
    let s = b
        .int(1)
        .sub(&x.mul(&yp1).scale(&PolyY::from_int(2)))
        .add(&x.mul(&x).mul(&ym1).mul(&ym1));
    let root = s.sqrt()?;
    let x2 = x.mul(&x);
    let x4 = x2.mul(&x2);
    let poly = x
        .mul(&yp1)
        .sub(&x4.mul(&y).mul(&ym1).scale(&PolyY::from_int(2)))
        .sub(&b.int(1));
    let one_m_xy = b.int(1).sub(&x.mul(&y));
    let num = poly
        .mul(&root)
        .add(&one_m_xy.mul(&one_m_xy))
        .add(&x2)
        .sub(&x.scale(&PolyY::from_int(2)));
    let den = x.mul(&y).mul(&root).scale(&PolyY::from_int(2));
    Ok(num.div(&den)?.truncate(ord))
}

struct Uni {
    ord: usize,
}

impl Uni {
    fn x(&self) -> TruncatedSeries<BigRational> {
        TruncatedSeries::monomial(One::one(), 1, self.ord)
    }
    fn int(&self, v: i64) -> TruncatedSeries<BigRational> {
        TruncatedSeries::constant(rat(v), self.ord)
    }
    /// `c0 + c1 x + c2 x^2 + ...`
    fn poly(&self, cs: &[i64]) -> TruncatedSeries<BigRational> {
        let mut out = TruncatedSeries::zero(self.ord);
        for (k, &c) in cs.iter().enumerate() {
            out = out.add(&TruncatedSeries::monomial(rat(c), k, self.ord));
        }
        out
    }
}

/// `C(x) = (1 - sqrt(1 - 4x)) / (2x)`.
fn expand_catalan(ord: usize) -> Result<TruncatedSeries<BigRational>, SeriesError> {
    let u = Uni { ord: ord + PAD };
    let num = u.int(1).sub(&u.poly(&[1, -4]).sqrt()?);
    let den = u.poly(&[0, 2]);
    Ok(num.div(&den)?.truncate(ord))
}

/// `W(x)` for the strict condition:
/// `(x + x sqrt(1-8x+8x^2)) / (2(1-x) sqrt(1-8x+8x^2))`.
fn expand_w3(ord: usize) -> Result<TruncatedSeries<BigRational>, SeriesError> {
    let u = Uni { ord: ord + PAD };
    let root = u.poly(&[1, -8, 8]).sqrt()?;
    let num = u.x().add(&u.x().mul(&root));
    let den = u.poly(&[2, -2]).mul(&root);
    Ok(num.div(&den)?.truncate(ord))
}

/// `1 + W(x)` for the weak condition minus 1:
/// `x/(1-x^2) + (1-2x-2x^2)/((1-x^2) sqrt(1-4x-4x^2)) - 1`.
fn expand_w4(ord: usize) -> Result<TruncatedSeries<BigRational>, SeriesError> {
    let u = Uni { ord: ord + PAD };
    let root = u.poly(&[1, -4, -4]).sqrt()?;
    let one_m_x2 = u.poly(&[1, 0, -1]);
    let term1 = u.x().div(&one_m_x2)?;
    let term2 = u.poly(&[1, -2, -2]).div(&one_m_x2.mul(&root))?;
    Ok(term1.add(&term2).sub(&u.int(1)).truncate(ord))
}

/// `W(x)` for the mixed condition:
/// `((1-x)^2 - (1-3x) sqrt(1-6x+x^2)) / (4(1-x) sqrt(1-6x+x^2))`.
fn expand_w5(ord: usize) -> Result<TruncatedSeries<BigRational>, SeriesError> {
    let u = Uni { ord: ord + PAD };
    let root = u.poly(&[1, -6, 1]).sqrt()?;
    let num = u.poly(&[1, -2, 1]).sub(&u.poly(&[1, -3]).mul(&root));
    let den = u.poly(&[4, -4]).mul(&root);
    Ok(num.div(&den)?.truncate(ord))
}

fn div_by_one_minus_x(
    s: &TruncatedSeries<BigRational>,
) -> Result<TruncatedSeries<BigRational>, SeriesError> {
    let u = Uni { ord: s.order() };
    s.div(&u.poly(&[1, -1]))
}

/// Expands a cataloged generating function to the given truncation order.
pub fn gf(name: GfName, order: usize) -> Result<Gf, SeriesError> {
    Ok(match name {
        GfName::C => Gf::Univariate(expand_catalan(order)?),
        GfName::E => Gf::Bivariate(expand_e(order)?),
        GfName::G => Gf::Bivariate(expand_g(order)?),
        GfName::N => Gf::Bivariate(expand_n(order)?),
        GfName::L => Gf::Bivariate(expand_l(order)?),
        GfName::A3 => Gf::Univariate(expand_e(order)?.subst_y(&rat(2))),
        GfName::B3 => Gf::Univariate(div_by_one_minus_x(&expand_g(order)?.subst_y(&rat(2)))?),
        GfName::W3 => Gf::Univariate(expand_w3(order)?),
        GfName::A4 => Gf::Univariate(
            expand_e(order)?
                .scale_x(&rat(2))
                .subst_y(&half())
                .scale(&half()),
        ),
        GfName::B4 => Gf::Univariate(div_by_one_minus_x(
            &expand_g(order)?
                .scale_x(&rat(2))
                .subst_y(&half())
                .scale(&half()),
        )?),
        GfName::W4 => Gf::Univariate(expand_w4(order)?),
        GfName::A5 => Gf::Univariate(expand_n(order)?.subst_y(&rat(2))),
        GfName::B5 => {
            let l2 = expand_l(order)?.subst_y(&rat(2));
            let x3 = TruncatedSeries::monomial(<BigRational as One>::one(), 3, l2.order());
            Gf::Univariate(div_by_one_minus_x(&x3.add(&l2))?)
        }
        GfName::W5 => Gf::Univariate(expand_w5(order)?),
    })
}
