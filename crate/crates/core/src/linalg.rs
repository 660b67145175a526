//! Exact integer matrix algebra: determinants, Smith factorization with
//! unimodular multipliers, and monomial-map application to log-sign vectors.
//!
//! Everything here is arbitrary-precision and exact; entry-size bounds are
//! used only to pre-size working precision elsewhere, never to truncate.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bench::OpCounter;
use crate::error::{Error, Result};
use crate::fixed::BigFixed;
use crate::logsign::{LogSign, Sign};

/// A dense square integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigInt::one();
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("matrix must be square and nonempty".into()));
        }
        let data = rows.iter().flatten().map(|&v| BigInt::from(v)).collect();
        Ok(IntMatrix { n, data })
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("matrix must be square and nonempty".into()));
        }
        Ok(IntMatrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: BigInt) {
        self.data[row * self.n + col] = v;
    }

    pub fn max_abs_entry(&self) -> BigUint {
        self.data
            .iter()
            .map(|v| v.magnitude().clone())
            .max()
            .unwrap_or_else(BigUint::zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = IntMatrix { n, data: vec![BigInt::zero(); n * n] };
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = a * other.get(k, j);
                    out.data[i * n + j] += prod;
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        let mut m = self.data.clone();
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * n + j].clone();
        for k in 0..n.saturating_sub(1) {
            if m[k * n + k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    m.swap(k * n + j, r * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&m, i, j) * at(&m, k, k) - at(&m, i, k) * at(&m, k, j);
                    m[i * n + j] = num / &prev;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = at(&m, k, k);
        }
        let det = at(&m, n - 1, n - 1);
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().magnitude().is_one()
    }

    /// Exact inverse of a unimodular matrix (integer adjugate divided by
    /// the +-1 determinant).
    pub fn unimodular_inverse(&self) -> IntMatrix {
        let n = self.n;
        debug_assert!(self.is_unimodular());
        let det = self.determinant();
        let mut out = IntMatrix { n, data: vec![BigInt::zero(); n * n] };
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(j, i);
                let mut c = minor.determinant();
                if (i + j) % 2 == 1 {
                    c = -c;
                }
                if det.is_negative() {
                    c = -c;
                }
                out.set(i, j, c);
            }
        }
        out
    }

    fn minor(&self, drop_row: usize, drop_col: usize) -> IntMatrix {
        let n = self.n;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            if i == drop_row {
                continue;
            }
            for j in 0..n {
                if j == drop_col {
                    continue;
                }
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix { n: n - 1, data }
    }
}

/// An exponent matrix: square, integer, nonzero determinant. Column `i`
/// holds the monomial exponent vector of equation `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    matrix: IntMatrix,
    determinant: BigInt,
    max_abs_entry: BigUint,
}

impl ExponentMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        let determinant = matrix.determinant();
        if determinant.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let max_abs_entry = matrix.max_abs_entry();
        Ok(ExponentMatrix { matrix, determinant, max_abs_entry })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn determinant(&self) -> &BigInt {
        &self.determinant
    }

    pub fn max_abs_entry(&self) -> &BigUint {
        &self.max_abs_entry
    }
}

/// Unimodular `u`, `v` and positive diagonal with `u * a * v = diag`,
/// where the diagonal satisfies the divisibility chain. The exact inverses
/// of both multipliers are accumulated during elimination, since mapping
/// roots back and forth needs them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithFactorization {
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
    diag: Vec<BigInt>,
}

impl SmithFactorization {
    pub fn u(&self) -> &IntMatrix {
        &self.u
    }

    pub fn u_inv(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v(&self) -> &IntMatrix {
        &self.v
    }

    pub fn v_inv(&self) -> &IntMatrix {
        &self.v_inv
    }

    pub fn diag(&self) -> &[BigInt] {
        &self.diag
    }

    pub fn diag_unsigned(&self, i: usize) -> BigUint {
        self.diag[i].magnitude().clone()
    }

    /// Largest diagonal entry (the last one, by the divisibility chain).
    pub fn last_diag(&self) -> BigUint {
        self.diag.last().expect("nonempty diagonal").magnitude().clone()
    }

    /// Largest integer appearing anywhere in the factorization; feeds the
    /// precision budget.
    pub fn max_integer(&self) -> BigUint {
        self.u
            .max_abs_entry()
            .max(self.v.max_abs_entry())
            .max(self.last_diag())
    }
}

struct SmithState {
    b: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SmithState {
    /// row_i -= q * row_k, mirrored into `u`; the inverse picks up the
    /// opposite column operation.
    fn row_combine(&mut self, i: usize, k: usize, q: &BigInt, counter: &mut OpCounter) {
        let n = self.b.n();
        for j in 0..n {
            counter.snf_words(self.b.get(i, j), q, self.b.get(k, j));
            let v = self.b.get(i, j) - q * self.b.get(k, j);
            self.b.set(i, j, v);
            let v = self.u.get(i, j) - q * self.u.get(k, j);
            self.u.set(i, j, v);
        }
        for r in 0..n {
            let v = self.u_inv.get(r, k) + q * self.u_inv.get(r, i);
            self.u_inv.set(r, k, v);
        }
    }

    /// col_j -= q * col_k, mirrored into `v`; the inverse picks up the
    /// opposite row operation.
    fn col_combine(&mut self, j: usize, k: usize, q: &BigInt, counter: &mut OpCounter) {
        let n = self.b.n();
        for i in 0..n {
            counter.snf_words(self.b.get(i, j), q, self.b.get(i, k));
            let v = self.b.get(i, j) - q * self.b.get(i, k);
            self.b.set(i, j, v);
            let v = self.v.get(i, j) - q * self.v.get(i, k);
            self.v.set(i, j, v);
        }
        for c in 0..n {
            let v = self.v_inv.get(k, c) + q * self.v_inv.get(j, c);
            self.v_inv.set(k, c, v);
        }
    }

    /// row_k += row_i, mirrored into `u`.
    fn row_add(&mut self, k: usize, i: usize, counter: &mut OpCounter) {
        let n = self.b.n();
        for j in 0..n {
            counter.snf_words(self.b.get(k, j), &BigInt::one(), self.b.get(i, j));
            let v = self.b.get(k, j) + self.b.get(i, j);
            self.b.set(k, j, v);
            let v = self.u.get(k, j) + self.u.get(i, j);
            self.u.set(k, j, v);
        }
        for r in 0..n {
            let v = self.u_inv.get(r, i) - self.u_inv.get(r, k);
            self.u_inv.set(r, i, v);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.b.n();
        for j in 0..n {
            self.b.data.swap(a * n + j, b * n + j);
            self.u.data.swap(a * n + j, b * n + j);
        }
        for r in 0..n {
            self.u_inv.data.swap(r * n + a, r * n + b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.b.n();
        for i in 0..n {
            self.b.data.swap(i * n + a, i * n + b);
            self.v.data.swap(i * n + a, i * n + b);
        }
        for c in 0..n {
            self.v_inv.data.swap(a * n + c, b * n + c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        let n = self.b.n();
        for j in 0..n {
            let v = -self.b.get(i, j).clone();
            self.b.set(i, j, v);
            let v = -self.u.get(i, j).clone();
            self.u.set(i, j, v);
        }
        for r in 0..n {
            let v = -self.u_inv.get(r, i).clone();
            self.u_inv.set(r, i, v);
        }
    }

    /// Minimal-magnitude nonzero entry in the trailing submatrix.
    fn min_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let n = self.b.n();
        let mut best: Option<(usize, usize, BigUint)> = None;
        for i in k..n {
            for j in k..n {
                let e = self.b.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let mag = e.magnitude();
                if best.as_ref().is_none_or(|(_, _, m)| mag < m) {
                    best = Some((i, j, mag.clone()));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Smith factorization by classical elimination with minimal-entry pivoting.
pub fn smith_normal_form(a: &ExponentMatrix) -> SmithFactorization {
    smith_normal_form_counted(a, &mut OpCounter::new())
}

pub fn smith_normal_form_counted(
    a: &ExponentMatrix,
    counter: &mut OpCounter,
) -> SmithFactorization {
    let n = a.n();
    let mut st = SmithState {
        b: a.matrix().clone(),
        u: IntMatrix::identity(n),
        u_inv: IntMatrix::identity(n),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    for k in 0..n {
        loop {
            let (pi, pj) = st.min_pivot(k).expect("nonsingular matrix has a pivot");
            st.swap_rows(k, pi);
            st.swap_cols(k, pj);
            let mut remainder_left = false;
            for i in k + 1..n {
                if st.b.get(i, k).is_zero() {
                    continue;
                }
                let q = st.b.get(i, k) / st.b.get(k, k);
                if !q.is_zero() {
                    st.row_combine(i, k, &q, counter);
                }
                remainder_left |= !st.b.get(i, k).is_zero();
            }
            if remainder_left {
                continue;
            }
            for j in k + 1..n {
                if st.b.get(k, j).is_zero() {
                    continue;
                }
                let q = st.b.get(k, j) / st.b.get(k, k);
                if !q.is_zero() {
                    st.col_combine(j, k, &q, counter);
                }
                remainder_left |= !st.b.get(k, j).is_zero();
            }
            if remainder_left {
                continue;
            }
            // Pull any entry the pivot does not divide into row k, so the
            // next pass shrinks the pivot and the divisibility chain holds.
            let pivot = st.b.get(k, k).clone();
            let offender = (k + 1..n).find(|&i| {
                (k + 1..n).any(|j| !st.b.get(i, j).mod_floor(&pivot).is_zero())
            });
            match offender {
                Some(i) => st.row_add(k, i, counter),
                None => break,
            }
        }
    }
    for k in 0..n {
        if st.b.get(k, k).is_negative() {
            st.negate_row(k);
        }
    }
    let diag = (0..n).map(|k| st.b.get(k, k).clone()).collect();
    SmithFactorization { u: st.u, u_inv: st.u_inv, v: st.v, v_inv: st.v_inv, diag }
}

/// Check every Smith invariant against the source matrix, exactly.
pub fn verify_factorization(a: &ExponentMatrix, f: &SmithFactorization) -> bool {
    let n = a.n();
    if f.u.n() != n || f.v.n() != n || f.diag.len() != n {
        return false;
    }
    if !f.u.is_unimodular() || !f.v.is_unimodular() {
        return false;
    }
    if f.diag.iter().any(|s| !s.is_positive()) {
        return false;
    }
    for i in 0..n - 1 {
        if !f.diag[i + 1].mod_floor(&f.diag[i]).is_zero() {
            return false;
        }
    }
    let product: BigInt = f.diag.iter().product();
    if product != a.determinant().abs() {
        return false;
    }
    let uav = f.u.mul(a.matrix()).mul(&f.v);
    for i in 0..n {
        for j in 0..n {
            let entry = uav.get(i, j);
            let ok = if i == j { entry == &f.diag[i] } else { entry.is_zero() };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Monomial map `y = x^m` with the column convention
/// `y_i = prod_j x_j^{m[j][i]}`: log magnitudes transform linearly, signs by
/// exponent parity.
///
/// Counted as one scale and one accumulate per nonzero entry. The entry
/// magnitudes of the unimodular multipliers are a bit-size resource, not a
/// field-operation count, and are priced by the factorization's word proxy.
pub fn apply_exponent(x: &[LogSign], m: &IntMatrix) -> Vec<LogSign> {
    apply_exponent_counted(x, m, &mut OpCounter::new())
}

pub fn apply_exponent_counted(
    x: &[LogSign],
    m: &IntMatrix,
    counter: &mut OpCounter,
) -> Vec<LogSign> {
    assert_eq!(x.len(), m.n(), "vector length must match matrix rows");
    let n = m.n();
    let bits = x.iter().map(LogSign::precision).max().unwrap_or(32);
    (0..n)
        .map(|i| {
            let mut logabs = BigFixed::zero(bits);
            let mut sign = Sign::Plus;
            for (j, xj) in x.iter().enumerate() {
                let k = m.get(j, i);
                if k.is_zero() {
                    continue;
                }
                counter.ring(2);
                logabs = logabs.add(&xj.logabs().mul_int(k));
                sign = sign.combine(xj.sign().pow_parity(k.magnitude().bit(0)));
            }
            LogSign::new(sign, logabs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn mat(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn expmat(rows: &[Vec<i64>]) -> ExponentMatrix {
        ExponentMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(mat(&[vec![1, 0], vec![0, 1]]).determinant(), BigInt::from(1));
        assert_eq!(mat(&[vec![1, 1], vec![1, -1]]).determinant(), BigInt::from(-2));
        assert_eq!(mat(&[vec![2, 0], vec![0, 3]]).determinant(), BigInt::from(6));
        assert_eq!(mat(&[vec![1, 2], vec![2, 4]]).determinant(), BigInt::from(0));
        assert_eq!(mat(&[vec![7]]).determinant(), BigInt::from(7));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        assert!(matches!(
            ExponentMatrix::from_rows(&[vec![1, 2], vec![2, 4]]),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn smith_identity() {
        let a = expmat(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let f = smith_normal_form(&a);
        assert_eq!(f.diag(), &[BigInt::one(), BigInt::one(), BigInt::one()]);
        assert!(verify_factorization(&a, &f));
    }

    #[test]
    fn smith_diag_2_3_gives_1_6() {
        let a = expmat(&[vec![2, 0], vec![0, 3]]);
        let f = smith_normal_form(&a);
        assert_eq!(f.diag(), &[BigInt::from(1), BigInt::from(6)]);
        assert!(verify_factorization(&a, &f));
    }

    #[test]
    fn smith_of_1_1_1_m1_gives_1_2() {
        let a = expmat(&[vec![1, 1], vec![1, -1]]);
        let f = smith_normal_form(&a);
        assert_eq!(f.diag(), &[BigInt::from(1), BigInt::from(2)]);
        assert!(verify_factorization(&a, &f));
    }

    #[test]
    fn verify_rejects_wrong_divisibility_order() {
        let a = expmat(&[vec![1, 1], vec![1, -1]]);
        let good = smith_normal_form(&a);
        let bad = SmithFactorization {
            u: good.u().clone(),
            u_inv: good.u_inv().clone(),
            v: good.v().clone(),
            v_inv: good.v_inv().clone(),
            diag: vec![BigInt::from(2), BigInt::from(1)],
        };
        assert!(!verify_factorization(&a, &bad));
    }

    #[test]
    fn random_factorizations_verify() {
        let mut rng = StdRng::seed_from_u64(7);
        let mut done = 0;
        while done < 150 {
            let n = rng.random_range(1..=5usize);
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.random_range(-50..=50)).collect())
                .collect();
            let Ok(a) = ExponentMatrix::from_rows(&rows) else {
                continue;
            };
            let f = smith_normal_form(&a);
            assert!(verify_factorization(&a, &f), "failed on {rows:?}");
            assert_eq!(f.u().mul(f.u_inv()), IntMatrix::identity(n));
            assert_eq!(f.v().mul(f.v_inv()), IntMatrix::identity(n));
            done += 1;
        }
    }

    #[test]
    fn snf_counter_tracks_word_work() {
        let a = expmat(&[vec![12, 34], vec![55, -8]]);
        let mut counter = OpCounter::new();
        let f = smith_normal_form_counted(&a, &mut counter);
        assert!(verify_factorization(&a, &f));
        assert!(counter.snf_bitop_proxy > 0);
    }

    #[test]
    fn apply_exponent_identity_and_sign_rules() {
        let bits = 64;
        let x = vec![
            LogSign::new(Sign::Plus, BigFixed::from_i64(1, bits)),
            LogSign::new(Sign::Plus, BigFixed::from_i64(2, bits)),
        ];
        let id = IntMatrix::identity(2);
        let y = apply_exponent(&x, &id);
        assert_eq!(y[0].logabs().to_f64(), 1.0);
        assert_eq!(y[1].logabs().to_f64(), 2.0);

        let m = mat(&[vec![1, 1], vec![1, -1]]);
        let y = apply_exponent(&x, &m);
        assert_eq!(y[0].logabs().to_f64(), 3.0);
        assert_eq!(y[1].logabs().to_f64(), -1.0);
        assert_eq!(y[0].sign(), Sign::Plus);
        assert_eq!(y[1].sign(), Sign::Plus);
    }

    #[test]
    fn apply_exponent_sign_parity() {
        // (-2, 3) through a first column of (1, 1): y_1 = -2 * 3 = -6.
        let bits = 96;
        let x = vec![
            LogSign::from_real(-2.0, bits).unwrap(),
            LogSign::from_real(3.0, bits).unwrap(),
        ];
        let m = mat(&[vec![1, 0], vec![1, 0]]);
        let y = apply_exponent(&x, &m);
        assert_eq!(y[0].sign(), Sign::Minus);
        let ln6 = BigFixed::ln_rational(&BigUint::from(6u32), &BigUint::from(1u32), bits);
        let diff = y[0].logabs().sub(&ln6).abs();
        assert!(diff.to_f64() < 1e-25);
    }

    proptest! {
        #[test]
        fn composition_law(
            entries_m in proptest::collection::vec(-6i64..=6, 9),
            entries_p in proptest::collection::vec(-6i64..=6, 9),
            logs in proptest::collection::vec(-4.0f64..4.0, 3),
            signs in proptest::collection::vec(proptest::bool::ANY, 3),
        ) {
            let bits = 128;
            let m = IntMatrix::from_bigint_rows(
                entries_m.chunks(3).map(|c| c.iter().map(|&v| BigInt::from(v)).collect()).collect(),
            ).unwrap();
            let p = IntMatrix::from_bigint_rows(
                entries_p.chunks(3).map(|c| c.iter().map(|&v| BigInt::from(v)).collect()).collect(),
            ).unwrap();
            let x: Vec<LogSign> = logs.iter().zip(&signs).map(|(&l, &neg)| {
                LogSign::new(
                    if neg { Sign::Minus } else { Sign::Plus },
                    BigFixed::from_f64(l, bits).unwrap(),
                )
            }).collect();
            // (x^M)^P == x^(MP): exact in fixed point, signs included.
            let lhs = apply_exponent(&apply_exponent(&x, &m), &p);
            let rhs = apply_exponent(&x, &m.mul(&p));
            for (a, b) in lhs.iter().zip(&rhs) {
                prop_assert_eq!(a.sign(), b.sign());
                prop_assert_eq!(
                    a.logabs().cmp_value(b.logabs()),
                    std::cmp::Ordering::Equal
                );
            }
        }

        #[test]
        fn unimodular_round_trip(
            seed in 0u64..1000,
            logs in proptest::collection::vec(-4.0f64..4.0, 3),
        ) {
            let bits = 128;
            let mut rng = StdRng::seed_from_u64(seed);
            // Random unimodular matrix: product of elementary operations.
            let mut m = IntMatrix::identity(3);
            for _ in 0..8 {
                let i = rng.random_range(0..3);
                let mut j = rng.random_range(0..3);
                if i == j { j = (j + 1) % 3; }
                let q = BigInt::from(rng.random_range(-3i64..=3));
                for col in 0..3 {
                    let v = m.get(i, col) + &q * m.get(j, col);
                    m.set(i, col, v);
                }
            }
            prop_assume!(m.is_unimodular());
            let minv = m.unimodular_inverse();
            let x: Vec<LogSign> = logs.iter()
                .map(|&l| LogSign::new(Sign::Plus, BigFixed::from_f64(l, bits).unwrap()))
                .collect();
            let back = apply_exponent(&apply_exponent(&x, &m), &minv);
            for (a, b) in back.iter().zip(&x) {
                prop_assert_eq!(a.sign(), b.sign());
                prop_assert_eq!(
                    a.logabs().cmp_value(b.logabs()),
                    std::cmp::Ordering::Equal
                );
            }
        }
    }

    #[test]
    fn unimodular_inverse_is_exact() {
        let m = mat(&[vec![2, 3], vec![1, 2]]);
        assert!(m.is_unimodular());
        let inv = m.unimodular_inverse();
        assert_eq!(m.mul(&inv), IntMatrix::identity(2));
        assert_eq!(inv.mul(&m), IntMatrix::identity(2));
    }
}
