use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NumError;

/// Dense univariate polynomial with big-integer coefficients, lowest degree first.
///
/// Trailing zero coefficients are trimmed, so the zero polynomial has an
/// empty coefficient list and degree `None`.
#[derive(Clone, Debug)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
    var: char,
}

impl PartialEq for IntPoly {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs
    }
}

impl Eq for IntPoly {}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs, var: 'x' }
    }

    /// Coefficients given from the constant term upwards.
    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Coefficients given from the leading term downwards.
    pub fn from_desc(c: &[i64]) -> Self {
        let mut v: Vec<i64> = c.to_vec();
        v.reverse();
        Self::from_i64s(&v)
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial c·x^k.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` standing for −∞ on the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect()).with_var(self.var)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect()).with_var(self.var)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero().with_var(self.var);
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v).with_var(self.var)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect()).with_var(self.var)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one().with_var(self.var);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
        .with_var(self.var)
    }

    /// f(g(x)).
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(g).add(&Self::constant(c.clone())))
            .with_var(self.var)
    }

    /// Exact division; `None` when the quotient is not in ℤ[x].
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (qt, r) = self.div_rem_integral(d)?;
        r.is_zero().then_some(qt)
    }

    /// Long division requiring every step to divide exactly by lc(d).
    fn div_rem_integral(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        let mut qv = vec![BigInt::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let top = r.last().unwrap().clone();
            if !top.is_zero() {
                let (qc, rem) = top.div_rem(&lc);
                if !rem.is_zero() {
                    return None;
                }
                for (j, c) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &qc * c;
                }
                qv[k] = qc;
            }
            r.pop();
        }
        Some((Self::new(qv).with_var(self.var), Self::new(r).with_var(self.var)))
    }

    /// Greatest common divisor of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect()).with_var(self.var)
    }

    /// Pseudo-remainder: lc(d)^{deg f − deg d + 1} f mod d.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("nonzero divisor");
        let lc = d.lc();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let t = Self::monomial(r.lc(), rd - dd).mul(d);
            r = r.scale(&lc).sub(&t);
        }
        r
    }

    /// Primitive gcd over ℚ[x] (normalized with positive leading coefficient).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    pub fn resultant(&self, o: &Self) -> BigInt {
        let m = sylvester(&self.coeffs, &o.coeffs);
        if m.is_empty() {
            return BigInt::one();
        }
        bareiss_det(m)
    }

    /// disc(f) = (−1)^{n(n−1)/2} res(f, f′) / lc(f).
    pub fn discriminant(&self) -> Result<BigInt, NumError> {
        let n = match self.degree() {
            Some(n) if n >= 2 => n,
            _ => return Err(NumError::DegreeTooLow),
        };
        let r = self.resultant(&self.derivative());
        let (qt, rem) = r.div_rem(&self.lc());
        debug_assert!(rem.is_zero());
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -qt } else { qt })
    }

    /// All integer roots of a nonzero polynomial, sorted ascending.
    ///
    /// Candidates are the divisors of the lowest nonzero coefficient after
    /// factoring out powers of x; zero is reported when x divides f.
    pub fn integer_roots(&self) -> Vec<BigInt> {
        let Some(low) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            return vec![];
        };
        let mut roots = Vec::new();
        if low > 0 {
            roots.push(BigInt::zero());
        }
        let reduced = Self::new(self.coeffs[low..].to_vec());
        let c0 = reduced.coeff(0).abs();
        for d in divisors(&c0) {
            for cand in [d.clone(), -d] {
                if reduced.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
        roots.sort();
        roots
    }

    /// Coefficients reduced into [0, p).
    pub fn mod_p(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        self.coeffs
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced"))
            .collect()
    }
}

/// Sylvester matrix of f and g (coefficients lowest first).
fn sylvester(f: &[BigInt], g: &[BigInt]) -> Vec<Vec<BigInt>> {
    let (m, n) = (f.len().saturating_sub(1), g.len().saturating_sub(1));
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Operations needed for fraction-free elimination over an integral domain.
pub trait ExactRing: Clone {
    fn r_zero() -> Self;
    fn r_one() -> Self;
    fn r_is_zero(&self) -> bool;
    fn r_add(&self, o: &Self) -> Self;
    fn r_sub(&self, o: &Self) -> Self;
    fn r_mul(&self, o: &Self) -> Self;
    fn r_neg(&self) -> Self;
    fn r_div(&self, o: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn r_zero() -> Self {
        Zero::zero()
    }
    fn r_one() -> Self {
        One::one()
    }
    fn r_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn r_add(&self, o: &Self) -> Self {
        self + o
    }
    fn r_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn r_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn r_neg(&self) -> Self {
        -self
    }
    fn r_div(&self, o: &Self) -> Self {
        self / o
    }
}

impl ExactRing for IntPoly {
    fn r_zero() -> Self {
        IntPoly::zero()
    }
    fn r_one() -> Self {
        IntPoly::one()
    }
    fn r_is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn r_add(&self, o: &Self) -> Self {
        IntPoly::add(self, o)
    }
    fn r_sub(&self, o: &Self) -> Self {
        IntPoly::sub(self, o)
    }
    fn r_mul(&self, o: &Self) -> Self {
        IntPoly::mul(self, o)
    }
    fn r_neg(&self) -> Self {
        IntPoly::neg(self)
    }
    fn r_div(&self, o: &Self) -> Self {
        IntPoly::exact_div(self, o).expect("Bareiss division is exact")
    }
}

/// Determinant by Bareiss fraction-free elimination.
pub fn bareiss_det<R: ExactRing>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::r_one();
    }
    let mut sign = false;
    let mut prev = R::r_one();
    for k in 0..n - 1 {
        if m[k][k].r_is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].r_is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return R::r_zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].r_mul(&m[k][k]).r_sub(&m[i][k].r_mul(&m[k][j]));
                m[i][j] = v.r_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.r_neg()
    } else {
        d
    }
}

/// Positive divisors of |n| (empty for n = 0), ascending.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![];
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if !m.is_one() {
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

fn fmt_terms<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (usize, T, bool)>,
    var: char,
) -> fmt::Result {
    let mut first = true;
    for (k, c, neg) in terms {
        let c = c.to_string();
        let body = match (k, c.as_str()) {
            (0, _) => c.clone(),
            (_, "1") => String::new(),
            _ => c.clone(),
        };
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let sep = if body.is_empty() || mono.is_empty() { "" } else { "*" };
        let term = format!("{body}{sep}{mono}");
        if first {
            write!(f, "{}{}", if neg { "-" } else { "" }, term)?;
            first = false;
        } else {
            write!(f, " {} {}", if neg { '-' } else { '+' }, term)?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.abs(), c.is_negative()));
        fmt_terms(f, terms, self.var)
    }
}

/// Polynomial in x whose coefficients are polynomials in y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<IntPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<IntPoly>) -> Self {
        while coeffs.last().is_some_and(IntPoly::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs: coeffs.into_iter().map(|c| c.with_var('y')).collect() }
    }

    /// Builds from (coefficient, x-power, y-power) terms.
    pub fn from_terms(terms: &[(i64, usize, usize)]) -> Self {
        let dx = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut rows = vec![IntPoly::zero(); dx + 1];
        for &(c, i, j) in terms {
            rows[i] = rows[i].add(&IntPoly::monomial(BigInt::from(c), j));
        }
        Self::new(rows)
    }

    pub fn coeffs(&self) -> &[IntPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> IntPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(IntPoly::zero)
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).sub(&o.coeff(k))).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::new(vec![]);
        }
        let mut v = vec![IntPoly::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Self::new(v)
    }

    /// Multiplies every coefficient by a polynomial in y.
    pub fn scale_y(&self, p: &IntPoly) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul(p)).collect())
    }

    pub fn derivative_x(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&BigInt::from(k)))
                .collect(),
        )
    }

    /// Specializes y to an integer.
    pub fn eval_y(&self, y: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c.eval(y)).collect())
    }

    /// Substitutes y ↦ g(y).
    pub fn compose_y(&self, g: &IntPoly) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.compose(g)).collect())
    }

    /// Substitutes x ↦ m(y)·x.
    pub fn scale_x_by(&self, m: &IntPoly) -> Self {
        let mut pw = IntPoly::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.mul(&pw));
            pw = pw.mul(m);
        }
        Self::new(out)
    }

    /// Substitutes x ↦ g(y), yielding a polynomial in y.
    pub fn eval_x_poly(&self, g: &IntPoly) -> IntPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(IntPoly::zero(), |acc, c| acc.mul(g).add(c))
    }

    /// Divides every coefficient exactly by a polynomial in y.
    pub fn exact_div_y(&self, d: &IntPoly) -> Option<Self> {
        self.coeffs
            .iter()
            .map(|c| c.exact_div(d))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    pub fn resultant_x(&self, o: &Self) -> IntPoly {
        let (m, n) = (self.coeffs.len().saturating_sub(1), o.coeffs.len().saturating_sub(1));
        let size = m + n;
        if size == 0 {
            return IntPoly::one();
        }
        let mut rows = Vec::with_capacity(size);
        for i in 0..n {
            let mut row = vec![IntPoly::zero(); size];
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
            rows.push(row);
        }
        for i in 0..m {
            let mut row = vec![IntPoly::zero(); size];
            for (j, c) in o.coeffs.iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
            rows.push(row);
        }
        bareiss_det(rows).with_var('y')
    }

    /// disc_x f = (−1)^{n(n−1)/2} res_x(f, ∂f/∂x) / lc_x(f), a polynomial in y.
    pub fn discriminant_x(&self) -> Result<IntPoly, NumError> {
        let n = match self.degree_x() {
            Some(n) if n >= 2 => n,
            _ => return Err(NumError::DegreeTooLow),
        };
        let r = self.resultant_x(&self.derivative_x());
        let qt = r.exact_div(self.coeffs.last().unwrap()).ok_or(NumError::DegreeTooLow)?;
        Ok(if (n * (n - 1) / 2) % 2 == 1 { qt.neg() } else { qt }.with_var('y'))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "*x".to_string(),
                _ => format!("*x^{k}"),
            };
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}){mono}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// p(x,y) = x⁵ − (2y+1)x³ − (y²+2)x² + y(y−1)x + y³.
pub fn p_xy() -> BiPoly {
    BiPoly::from_terms(&[
        (1, 5, 0),
        (-2, 3, 1),
        (-1, 3, 0),
        (-1, 2, 2),
        (-2, 2, 0),
        (1, 1, 2),
        (-1, 1, 1),
        (1, 0, 3),
    ])
}

/// q(x,κ) = x³ − x² + x − (κ−1), with κ as the second variable.
pub fn q_x_kappa() -> BiPoly {
    BiPoly::from_terms(&[(1, 3, 0), (-1, 2, 0), (1, 1, 0), (-1, 0, 1), (1, 0, 0)])
}

/// h(x,κ) = x⁵ − κ⁶(2κ−1)x³ − κ⁹(κ²−2κ+3)x² + (κ−2)(κ−1)κ¹²x + (κ−1)³κ¹⁵.
pub fn h_x_kappa() -> BiPoly {
    let k = IntPoly::x();
    let kp = |e: u32| k.pow(e);
    let c = |v: &[i64]| IntPoly::from_i64s(v);
    BiPoly::new(vec![
        c(&[-1, 1]).pow(3).mul(&kp(15)),
        c(&[2, -3, 1]).mul(&kp(12)),
        c(&[3, -2, 1]).mul(&kp(9)).neg(),
        c(&[-1, 2]).mul(&kp(6)).neg(),
        IntPoly::zero(),
        IntPoly::one(),
    ])
}

/// h̃(x,κ) = x⁵ − (2κ−1)x³ − (κ²−2κ+3)x² + (κ−2)(κ−1)x + (κ−1)³.
pub fn h_tilde_x_kappa() -> BiPoly {
    let c = |v: &[i64]| IntPoly::from_i64s(v);
    BiPoly::new(vec![
        c(&[-1, 1]).pow(3),
        c(&[2, -3, 1]),
        c(&[3, -2, 1]).neg(),
        c(&[-1, 2]).neg(),
        IntPoly::zero(),
        IntPoly::one(),
    ])
}
