//! Exact bivariate generating functions for the cubes of `S(2, n)`.
//!
//! `C(x, y) = Σ c_{n,d} x^n y^d` counts `d`-cubes of `S(2, n)`; `M` and `F`
//! count irreducible and final irreducible partial states. All arithmetic is
//! over arbitrary-precision integers.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complex_enum::{self, Family};
use crate::par::Execution;

/// A polynomial in `x` and `y` with integer coefficients, keyed by
/// `(x-degree, y-degree)`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::monomial(1, 0, 0)
    }

    pub fn monomial(c: i64, i: u32, j: u32) -> Self {
        Poly2::from_terms(&[(c, i, j)])
    }

    /// Sum of `c x^i y^j` over `(c, i, j)`.
    pub fn from_terms(terms: &[(i64, u32, u32)]) -> Self {
        let mut p = Poly2::zero();
        for &(c, i, j) in terms {
            p.add_term(i, j, BigInt::from(c));
        }
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        let entry = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Coefficient of `x^i` as a polynomial in `y` (dense, lowest first).
    pub fn x_slice(&self, i: u32) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = Vec::new();
        for (&(a, b), c) in self.terms.range((i, 0)..=(i, u32::MAX)) {
            debug_assert_eq!(a, i);
            if out.len() <= b as usize {
                out.resize(b as usize + 1, BigInt::zero());
            }
            out[b as usize] = c.clone();
        }
        out
    }

    /// Substitute an integer for `y`.
    pub fn eval_y(&self, y: i64) -> Poly2 {
        let mut p = Poly2::zero();
        let y = BigInt::from(y);
        for (&(i, j), c) in &self.terms {
            p.add_term(i, 0, c * num_traits::pow(y.clone(), j as usize));
        }
        p
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut p = self.clone();
        for (&(i, j), c) in &rhs.terms {
            p.add_term(i, j, c.clone());
        }
        p
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        self + &(-rhs)
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut p = Poly2::zero();
        for (&(a, b), c) in &self.terms {
            for (&(i, j), d) in &rhs.terms {
                p.add_term(a + i, b + j, c * d);
            }
        }
        p
    }
}

/// Monomials in graded order (total degree ascending), higher powers of `x`
/// first within a degree.
impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|&&(i, j)| (i + j, std::cmp::Reverse(i)));
        let mut out = String::new();
        for (k, &&(i, j)) in keys.iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let a = c.abs();
            let mut factors = Vec::new();
            if !a.is_one() || (i == 0 && j == 0) {
                factors.push(a.to_string());
            }
            for (var, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        f.write_str(&out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("denominator {0} has no unit constant term")]
pub struct NotInvertible(pub String);

/// `numerator / denominator` with the denominator's constant term equal to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    num: Poly2,
    den: Poly2,
}

impl RationalGF {
    /// The denominator's `x^0` part must be `±1`, so that it is invertible
    /// as a power series in `x` over `Z[y]`.
    pub fn new(num: Poly2, den: Poly2) -> Result<Self, NotInvertible> {
        let constant = den.x_slice(0);
        if constant.len() != 1 {
            return Err(NotInvertible(den.to_string()));
        }
        let c = &constant[0];
        if c.is_one() {
            Ok(RationalGF { num, den })
        } else if (-c).is_one() {
            Ok(RationalGF {
                num: -&num,
                den: -&den,
            })
        } else {
            Err(NotInvertible(den.to_string()))
        }
    }

    pub fn polynomial(p: Poly2) -> Self {
        RationalGF {
            num: p,
            den: Poly2::one(),
        }
    }

    pub fn numerator(&self) -> &Poly2 {
        &self.num
    }

    pub fn denominator(&self) -> &Poly2 {
        &self.den
    }

    pub fn add(&self, rhs: &RationalGF) -> RationalGF {
        RationalGF {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }

    pub fn sub(&self, rhs: &RationalGF) -> RationalGF {
        RationalGF {
            num: &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }

    pub fn mul(&self, rhs: &RationalGF) -> RationalGF {
        RationalGF {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }

    pub fn div(&self, rhs: &RationalGF) -> Result<RationalGF, NotInvertible> {
        RationalGF::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Exact equality of rational functions by cross-multiplication.
    pub fn same_function(&self, rhs: &RationalGF) -> bool {
        &self.num * &rhs.den == &rhs.num * &self.den
    }

    pub fn eval_y(&self, y: i64) -> Result<RationalGF, NotInvertible> {
        RationalGF::new(self.num.eval_y(y), self.den.eval_y(y))
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Coefficients `c_{n,d}` for `n ≤ order`: `table[n][d]`, trailing zeros in
/// `d` dropped.
pub type CoeffTable = Vec<Vec<BigInt>>;

/// Power-series expansion by the recurrence `c_n = N_n - Σ_{k≥1} D_k c_{n-k}`
/// on coefficients of `x^n` (each a polynomial in `y`).
pub fn series_coeffs(f: &RationalGF, order: usize) -> CoeffTable {
    let den_x = f.den.x_degree() as usize;
    let den: Vec<Vec<BigInt>> = (0..=den_x as u32).map(|i| f.den.x_slice(i)).collect();
    assert!(
        den[0].len() == 1 && den[0][0].is_one(),
        "constant term of the denominator must be exactly 1"
    );
    let mut table: CoeffTable = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut c = f.num.x_slice(n as u32);
        for (k, dk) in den.iter().enumerate().skip(1) {
            if k > n {
                break;
            }
            let prev = &table[n - k];
            let mut prod = vec![BigInt::zero(); dk.len() + prev.len()];
            for (a, x) in dk.iter().enumerate() {
                for (b, y) in prev.iter().enumerate() {
                    prod[a + b] += x * y;
                }
            }
            if c.len() < prod.len() {
                c.resize(prod.len(), BigInt::zero());
            }
            for (ci, p) in c.iter_mut().zip(prod) {
                *ci -= p;
            }
        }
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        table.push(c);
    }
    table
}

/// Coefficient `[x^n y^d]` of a table, zero when absent.
pub fn coeff(table: &CoeffTable, n: usize, d: usize) -> BigInt {
    table
        .get(n)
        .and_then(|row| row.get(d))
        .cloned()
        .unwrap_or_default()
}

fn one_minus_x_sq() -> Poly2 {
    Poly2::from_terms(&[(1, 0, 0), (-2, 1, 0), (1, 2, 0)])
}

fn over_one_minus_x_sq(num: &[(i64, u32, u32)]) -> RationalGF {
    RationalGF::new(Poly2::from_terms(num), one_minus_x_sq()).expect("unit constant term")
}

fn over_one_minus_x(num: &[(i64, u32, u32)]) -> RationalGF {
    RationalGF::new(
        Poly2::from_terms(num),
        Poly2::from_terms(&[(1, 0, 0), (-1, 1, 0)]),
    )
    .expect("unit constant term")
}

/// Irreducible partial states.
pub fn gf_m() -> RationalGF {
    over_one_minus_x_sq(&[
        (1, 3, 0),
        (1, 4, 0),
        (2, 4, 1),
        (2, 5, 1),
        (1, 5, 2),
        (1, 6, 2),
    ])
}

/// Final irreducible partial states.
pub fn gf_f() -> RationalGF {
    over_one_minus_x_sq(&[
        (1, 0, 0),
        (-1, 1, 0),
        (1, 2, 0),
        (1, 2, 1),
        (1, 3, 1),
        (1, 4, 1),
        (1, 4, 2),
        (1, 5, 2),
    ])
}

/// Cubes of `S(2, n)` by length and dimension.
pub fn gf_c() -> RationalGF {
    let num = Poly2::from_terms(&[
        (1, 0, 0),
        (1, 1, 1),
        (1, 2, 0),
        (1, 2, 1),
        (1, 3, 0),
        (3, 3, 1),
        (1, 3, 2),
        (2, 4, 1),
        (2, 4, 2),
        (1, 5, 2),
    ]);
    let den = Poly2::from_terms(&[
        (1, 0, 0),
        (-2, 1, 0),
        (1, 2, 0),
        (-1, 3, 0),
        (-1, 4, 0),
        (-2, 4, 1),
        (-2, 5, 1),
        (-1, 5, 2),
        (-1, 6, 2),
    ]);
    RationalGF::new(num, den).expect("unit constant term")
}

/// Generating function of one irreducible family.
pub fn family_gf(f: Family) -> RationalGF {
    match f {
        Family::M1 => over_one_minus_x_sq(&[(1, 5, 2)]),
        Family::M2 => over_one_minus_x_sq(&[(1, 6, 2)]),
        Family::M3 => over_one_minus_x_sq(&[(1, 4, 1)]),
        Family::M4 => over_one_minus_x_sq(&[(1, 5, 1)]),
        Family::M5 => over_one_minus_x_sq(&[(1, 4, 1)]),
        Family::M6 => over_one_minus_x_sq(&[(1, 5, 1)]),
        Family::M7 => over_one_minus_x_sq(&[(1, 3, 0)]),
        Family::M8 => over_one_minus_x_sq(&[(1, 4, 0)]),
        Family::F1 => over_one_minus_x(&[(1, 0, 0)]),
        Family::F2 => over_one_minus_x(&[(1, 2, 1)]),
        Family::F3 => over_one_minus_x_sq(&[(1, 3, 1)]),
        Family::F4 => over_one_minus_x_sq(&[(1, 4, 2)]),
        Family::F5 => over_one_minus_x_sq(&[(1, 5, 2)]),
        Family::F6 => over_one_minus_x_sq(&[(1, 2, 0)]),
        Family::F7 => over_one_minus_x_sq(&[(1, 3, 1)]),
        Family::F8 => over_one_minus_x_sq(&[(1, 4, 1)]),
    }
}

/// Total number of factors of family `f` over all words `m_1 … m_l f'`,
/// by weight: `M_f F / (1 - M)^2` for a moving family, `F_f / (1 - M)` for a
/// final one.
pub fn family_count_gf(f: Family) -> RationalGF {
    let one = RationalGF::polynomial(Poly2::one());
    let one_minus_m = one.sub(&gf_m());
    if f.is_final() {
        family_gf(f).div(&one_minus_m)
    } else {
        family_gf(f)
            .mul(&gf_f())
            .div(&one_minus_m.mul(&one_minus_m))
    }
    .expect("1 - M has unit constant term")
}

/// `1 + x C = F / (1 - M)`, checked by clearing denominators.
pub fn factorization_identity_holds() -> bool {
    let c = gf_c();
    let x = Poly2::monomial(1, 1, 0);
    let lhs = RationalGF::new(&c.den + &(&x * &c.num), c.den.clone()).expect("unit");
    let one = RationalGF::polynomial(Poly2::one());
    let rhs = gf_f().div(&one.sub(&gf_m())).expect("unit");
    lhs.same_function(&rhs)
}

/// `C(x, -1)` before cancellation.
pub fn c_at_minus_one() -> RationalGF {
    gf_c().eval_y(-1).expect("unit constant term")
}

/// `C(x, -1) = 1 / (1 - x)`.
pub fn euler_identity_holds() -> bool {
    c_at_minus_one().same_function(&over_one_minus_x(&[(1, 0, 0)]))
}

/// Cube counts `c_{n,d}` of `S(2, n)` for `n ≤ order` by enumeration.
pub fn enumerated_table(
    order: usize,
    exec: Execution,
) -> Result<CoeffTable, complex_enum::EnumError> {
    (0..=order)
        .map(|n| {
            let g = complex_enum::enumerate_states_with(2, n, complex_enum::max_states(), exec)?;
            let fv = complex_enum::enumerate_cubes_with(&g, None, exec).f_vector();
            Ok(fv.counts().iter().map(|&c| BigInt::from(c)).collect())
        })
        .collect()
}

/// Result of [`verify_identities`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub order: usize,
    pub factorization: bool,
    pub euler: bool,
    pub series_matches_enumeration: bool,
    pub first_discrepancy: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.factorization && self.euler && self.series_matches_enumeration
    }
}

/// Check the factorization identity, the Euler identity and the series of
/// `C` against enumerated f-vectors up to `x^order`.
pub fn verify_identities(order: usize) -> Result<IdentityReport, complex_enum::EnumError> {
    let factorization = factorization_identity_holds();
    let euler_series = series_coeffs(&c_at_minus_one(), order);
    let euler =
        euler_identity_holds() && (0..=order).all(|n| coeff(&euler_series, n, 0) == BigInt::one());
    let series = series_coeffs(&gf_c(), order);
    let enumerated = enumerated_table(order, Execution::default())?;
    let mut first_discrepancy = None;
    if !factorization {
        first_discrepancy = Some("1 + xC != F/(1 - M)".to_string());
    } else if !euler {
        first_discrepancy = Some("C(x, -1) != 1/(1 - x)".to_string());
    }
    'outer: for n in 0..=order {
        let width = series[n].len().max(enumerated[n].len());
        for d in 0..width {
            let (a, b) = (coeff(&series, n, d), coeff(&enumerated, n, d));
            if a != b {
                first_discrepancy.get_or_insert(format!("c[{n},{d}]: series {a}, enumeration {b}"));
                break 'outer;
            }
        }
    }
    let series_matches_enumeration = (0..=order).all(|n| series[n] == enumerated[n]);
    Ok(IdentityReport {
        order,
        factorization,
        euler,
        series_matches_enumeration,
        first_discrepancy,
    })
}

/// `n,d,c` rows.
pub fn table_csv(table: &CoeffTable) -> String {
    let mut out = String::from("n,d,c\n");
    for (n, row) in table.iter().enumerate() {
        for (d, c) in row.iter().enumerate() {
            let _ = writeln!(out, "{n},{d},{c}");
        }
    }
    out
}

/// Rows of coefficients; values beyond `i64` become strings.
pub fn table_json(table: &CoeffTable) -> serde_json::Value {
    let rows = table
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| match c.to_i64() {
                    Some(v) => serde_json::Value::from(v),
                    None => serde_json::Value::from(c.to_string()),
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>();
    serde_json::Value::from(rows)
}

/// `y`-polynomial of one row, e.g. `53 + 81*y + 30*y^2 + y^3`.
pub fn row_string(row: &[BigInt]) -> String {
    let mut p = Poly2::zero();
    for (d, c) in row.iter().enumerate() {
        p.add_term(0, d as u32, c.clone());
    }
    p.to_string()
}
