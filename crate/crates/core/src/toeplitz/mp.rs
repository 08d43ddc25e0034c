//! Multiprecision kernels for symmetric Toeplitz systems: Levinson-Durbin, the Gohberg-Semencul
//! inverse, and Toeplitz products by Kronecker substitution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::integer::Order;
use rug::{Assign, Float, Integer};

/// Guard bits carried by fixed-point products on top of the working precision.
const GUARD: u32 = 64;

/// Result of a Levinson-Durbin pass on T − shift·I.
///
/// `a` is the predictor (1, a_1, …, a_{N−1}) with (T − shift)·a = e·e_1.
pub(crate) struct Durbin {
    pub(crate) e: Float,
    pub(crate) a: Vec<Float>,
}

impl Durbin {
    /// tr((T − shift)^{-1}) = (1/e) Σ_k (N − 2k) a_k².
    pub(crate) fn trace_inverse(&self) -> Float {
        let prec = self.e.prec();
        let n = self.a.len() as i64;
        let mut acc = Float::with_val(prec, 0u32);
        let mut sq = Float::new(prec);
        for (k, ak) in self.a.iter().enumerate() {
            sq.assign(ak * ak);
            sq *= n - 2 * k as i64;
            acc += &sq;
        }
        acc / &self.e
    }

    pub(crate) fn norm_sq(&self) -> Float {
        dot(&self.a, &self.a, self.e.prec())
    }
}

/// Levinson-Durbin on T − shift·I. Returns `None` as soon as a pivot is not positive, which
/// by Sylvester's law of inertia means shift ≥ λ_min or the precision is exhausted.
pub(crate) fn durbin(col: &[Float], shift: &Float, prec: u32) -> Option<Durbin> {
    let size = col.len();
    let mut t: Vec<Float> = col.iter().map(|c| Float::with_val(prec, c)).collect();
    t[0] -= shift;
    if !t[0].is_sign_positive() || t[0].is_zero() {
        return None;
    }
    let mut a: Vec<Float> = Vec::with_capacity(size);
    let mut e = t[0].clone();
    let mut tmp = Float::new(prec);
    let mut t1 = Float::new(prec);
    let mut t2 = Float::new(prec);
    let mut acc = Float::new(prec);
    for k in 1..size {
        acc.assign(&t[k]);
        for (i, ai) in a.iter().enumerate() {
            tmp.assign(ai * &t[k - 1 - i]);
            acc += &tmp;
        }
        let mut g = Float::with_val(prec, &acc / &e);
        g = -g;
        let m = a.len();
        for i in 0..m / 2 {
            let j = m - 1 - i;
            t1.assign(&g * &a[j]);
            t2.assign(&g * &a[i]);
            a[i] += &t1;
            a[j] += &t2;
        }
        if m % 2 == 1 {
            t1.assign(&g * &a[m / 2]);
            a[m / 2] += &t1;
        }
        tmp.assign(&g * &g);
        tmp = 1 - tmp;
        e *= &tmp;
        a.push(g);
        if !e.is_sign_positive() || e.is_zero() {
            return None;
        }
    }
    let mut full = Vec::with_capacity(size);
    full.push(Float::with_val(prec, 1u32));
    full.extend(a);
    Some(Durbin { e, a: full })
}

pub(crate) fn dot(x: &[Float], y: &[Float], prec: u32) -> Float {
    let mut acc = Float::with_val(prec, 0u32);
    let mut tmp = Float::new(prec);
    for (a, b) in x.iter().zip(y) {
        tmp.assign(a * b);
        acc += &tmp;
    }
    acc
}

/// Coefficients c_i · 2^exp with a shared exponent.
struct Fixed {
    coeffs: Vec<Integer>,
    exp: i64,
}

impl Fixed {
    fn from_floats(v: &[Float], bits: u32) -> Fixed {
        let top = v.iter().filter_map(|x| x.get_exp()).max();
        let Some(top) = top else {
            return Fixed { coeffs: vec![Integer::new(); v.len()], exp: 0 };
        };
        let exp = top as i64 - bits as i64;
        let coeffs = v
            .iter()
            .map(|x| match x.to_integer_exp() {
                Some((i, e)) if !x.is_zero() => shift(i, e as i64 - exp),
                _ => Integer::new(),
            })
            .collect();
        Fixed { coeffs, exp }
    }

    /// Drops low bits so that the largest coefficient has at most `bits` bits.
    fn truncate(mut self, bits: u32) -> Fixed {
        let top = self.coeffs.iter().map(|c| c.significant_bits()).max().unwrap_or(0);
        if top > bits {
            let s = top - bits;
            for c in &mut self.coeffs {
                *c >>= s;
            }
            self.exp += s as i64;
        }
        self
    }

    fn reversed(&self) -> Fixed {
        Fixed { coeffs: self.coeffs.iter().rev().cloned().collect(), exp: self.exp }
    }

    fn to_floats(&self, prec: u32) -> Vec<Float> {
        self.coeffs
            .iter()
            .map(|c| {
                let f = Float::with_val(prec, c);
                f << self.exp as i32
            })
            .collect()
    }

    fn max_bits(&self) -> u32 {
        self.coeffs.iter().map(|c| c.significant_bits()).max().unwrap_or(0)
    }
}

fn shift(i: Integer, s: i64) -> Integer {
    if s >= 0 {
        i << s as u32
    } else {
        i >> (-s) as u32
    }
}

/// Integer whose base-2^B digits are all 2^{B−1}.
fn bias_pattern(slots: usize, words: usize) -> Integer {
    let mut digits = vec![0u64; slots * words];
    for s in 0..slots {
        digits[s * words + words - 1] = 1 << 63;
    }
    Integer::from_digits(&digits, Order::Lsf)
}

fn pack(c: &[Integer], words: usize, bias: &Integer) -> Integer {
    let mut digits = vec![0u64; c.len() * words];
    let mut t = Integer::new();
    for (i, x) in c.iter().enumerate() {
        t.assign(x + bias);
        t.write_digits(&mut digits[i * words..(i + 1) * words], Order::Lsf);
    }
    Integer::from_digits(&digits, Order::Lsf) - bias_pattern(c.len(), words)
}

fn unpack(z: Integer, slots: usize, keep: usize, words: usize, bias: &Integer) -> Vec<Integer> {
    let z = z + bias_pattern(slots, words);
    let mut digits = z.to_digits::<u64>(Order::Lsf);
    digits.resize(slots * words, 0);
    (0..keep)
        .map(|i| Integer::from_digits(&digits[i * words..(i + 1) * words], Order::Lsf) - bias)
        .collect()
}

/// First `keep` coefficients of the polynomial product a·b, exact in integer arithmetic.
fn poly_mul(a: &Fixed, b: &Fixed, keep: usize) -> Fixed {
    let terms = a.coeffs.len().min(b.coeffs.len()).max(1);
    let log_terms = usize::BITS - terms.leading_zeros();
    let slot_bits = a.max_bits() + b.max_bits() + log_terms + 2;
    let words = slot_bits.div_ceil(64) as usize;
    let bias = Integer::from(1) << (words * 64 - 1) as u32;
    let x = pack(&a.coeffs, words, &bias);
    let y = pack(&b.coeffs, words, &bias);
    let slots = a.coeffs.len() + b.coeffs.len() - 1;
    let coeffs = unpack(x * y, slots, keep.min(slots), words, &bias);
    let mut coeffs = coeffs;
    coeffs.resize(keep, Integer::new());
    Fixed { coeffs, exp: a.exp + b.exp }
}

/// L(c)v, the lower triangular Toeplitz product with first column c.
fn lower(c: &Fixed, v: &Fixed, bits: u32) -> Fixed {
    poly_mul(c, v, v.coeffs.len()).truncate(bits)
}

/// L(c)ᵀv, using (L(c)ᵀv)_i = (c ∗ Jv)_{N−1−i}.
fn upper(c: &Fixed, v: &Fixed, bits: u32) -> Fixed {
    poly_mul(c, &v.reversed(), v.coeffs.len()).reversed().truncate(bits)
}

fn sub_floats(x: &[Float], y: &[Float], prec: u32) -> Vec<Float> {
    x.iter().zip(y).map(|(a, b)| Float::with_val(prec, a - b)).collect()
}

/// (T − shift)^{-1} v by the Gohberg-Semencul formula
/// (1/e)[L(a)L(a)ᵀ − L(b)L(b)ᵀ] with b = (0, a_{N−1}, …, a_1).
pub(crate) fn gs_solve(d: &Durbin, v: &[Float], prec: u32) -> Vec<Float> {
    let bits = prec + GUARD;
    let n = d.a.len();
    let mut b = Vec::with_capacity(n);
    b.push(Float::with_val(prec, 0u32));
    b.extend(d.a[1..].iter().rev().cloned());
    let fa = Fixed::from_floats(&d.a, bits);
    let fb = Fixed::from_floats(&b, bits);
    let fv = Fixed::from_floats(v, bits);
    let y1 = lower(&fa, &upper(&fa, &fv, bits), bits).to_floats(prec);
    let y2 = lower(&fb, &upper(&fb, &fv, bits), bits).to_floats(prec);
    sub_floats(&y1, &y2, prec).into_iter().map(|x| x / &d.e).collect()
}

/// T v for the symmetric Toeplitz matrix with first column `col`.
pub(crate) fn toeplitz_matvec(col: &[Float], v: &[Float], prec: u32) -> Vec<Float> {
    let bits = prec + GUARD;
    let fc = Fixed::from_floats(col, bits);
    let fv = Fixed::from_floats(v, bits);
    let lo = lower(&fc, &fv, bits).to_floats(prec);
    let up = upper(&fc, &fv, bits).to_floats(prec);
    let mut diag = Float::new(prec);
    lo.iter()
        .zip(&up)
        .zip(v)
        .map(|((l, u), x)| {
            diag.assign(&col[0] * x);
            let mut s = Float::with_val(prec, l + u);
            s -= &diag;
            s
        })
        .collect()
}

pub(crate) struct InverseIteration {
    pub(crate) lambda: Float,
    pub(crate) residual: Float,
    pub(crate) iterations: usize,
}

/// Inverse iteration x ← T^{-1}x from a seeded random start, with Rayleigh quotients taken
/// through an independent Toeplitz product.
pub(crate) fn inverse_iteration(
    col: &[Float],
    d: &Durbin,
    prec: u32,
    seed: u64,
    max_iter: usize,
) -> Option<InverseIteration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vec<Float> = (0..col.len()).map(|_| Float::with_val(prec, rng.gen_range(-1.0..1.0))).collect();
    let mut prev: Option<Float> = None;
    for it in 1..=max_iter {
        let y = gs_solve(d, &x, prec);
        let scale = Float::with_val(prec, dot(&y, &y, prec).sqrt());
        x = y.into_iter().map(|v| v / &scale).collect();
        let tx = toeplitz_matvec(col, &x, prec);
        let rq = dot(&x, &tx, prec);
        let done = match &prev {
            Some(p) => {
                let diff = Float::with_val(prec, &rq - p).abs();
                diff <= Float::with_val(prec, &rq * 1e-15f64).abs()
            }
            None => col.len() == 1,
        };
        if done {
            let r: Vec<Float> = tx
                .iter()
                .zip(&x)
                .map(|(a, b)| Float::with_val(prec, a - Float::with_val(prec, &rq * b)))
                .collect();
            let residual = Float::with_val(prec, dot(&r, &r, prec).sqrt());
            return Some(InverseIteration { lambda: rq, residual, iterations: it });
        }
        prev = Some(rq);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn column(c: &[f64], prec: u32) -> Vec<Float> {
        c.iter().map(|&x| Float::with_val(prec, x)).collect()
    }

    fn dense(c: &[f64]) -> DMatrix<f64> {
        let n = c.len();
        DMatrix::from_fn(n, n, |i, j| c[i.abs_diff(j)])
    }

    const COL: [f64; 6] = [4.0, 1.5, -0.7, 0.3, 0.2, -0.1];

    #[test]
    fn durbin_predictor_solves_the_first_unit_system() {
        let prec = 200;
        let d = durbin(&column(&COL, prec), &Float::with_val(prec, 0.1), prec).unwrap();
        let mut m = dense(&COL);
        for i in 0..COL.len() {
            m[(i, i)] -= 0.1;
        }
        let a: Vec<f64> = d.a.iter().map(|x| x.to_f64()).collect();
        let ta = &m * nalgebra::DVector::from_vec(a);
        assert!((ta[0] - d.e.to_f64()).abs() < 1e-13);
        for v in ta.iter().skip(1) {
            assert!(v.abs() < 1e-13);
        }
        let inv = m.try_inverse().unwrap();
        assert!((d.trace_inverse().to_f64() - inv.trace()).abs() < 1e-13);
    }

    #[test]
    fn durbin_detects_shifts_above_the_smallest_eigenvalue() {
        let prec = 128;
        let lmin = dense(&COL).symmetric_eigen().eigenvalues.min();
        assert!(durbin(&column(&COL, prec), &Float::with_val(prec, lmin - 1e-6), prec).is_some());
        assert!(durbin(&column(&COL, prec), &Float::with_val(prec, lmin + 1e-6), prec).is_none());
    }

    #[test]
    fn gohberg_semencul_matches_dense_inverse() {
        let prec = 200;
        let col = column(&COL, prec);
        let d = durbin(&col, &Float::with_val(prec, 0u32), prec).unwrap();
        let v = [1.0, -2.0, 0.5, 3.0, 0.0, -1.25];
        let got = gs_solve(&d, &column(&v, prec), prec);
        let want = dense(&COL).try_inverse().unwrap() * nalgebra::DVector::from_row_slice(&v);
        for (g, w) in got.iter().zip(want.iter()) {
            assert!((g.to_f64() - w).abs() < 1e-13);
        }
    }

    #[test]
    fn kronecker_matvec_matches_dense_product() {
        let prec = 100;
        let v = [0.25, -1.0, 2.0, 0.0, 1e-3, -7.5];
        let got = toeplitz_matvec(&column(&COL, prec), &column(&v, prec), prec);
        let want = dense(&COL) * nalgebra::DVector::from_row_slice(&v);
        for (g, w) in got.iter().zip(want.iter()) {
            assert!((g.to_f64() - w).abs() < 1e-13);
        }
    }

    #[test]
    fn inverse_iteration_finds_the_smallest_eigenvalue() {
        let prec = 200;
        let col = column(&COL, prec);
        let d = durbin(&col, &Float::with_val(prec, 0u32), prec).unwrap();
        let it = inverse_iteration(&col, &d, prec, 3, 200).unwrap();
        let lmin = dense(&COL).symmetric_eigen().eigenvalues.min();
        assert!((it.lambda.to_f64() - lmin).abs() < 1e-12 * lmin.abs().max(1.0));
        assert!(it.residual.to_f64() < 1e-6);
    }
}
