//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_rational::BigRational;
use recoupling::exact::{wigner3j, ExactValue, DEFAULT_DIGITS};
use recoupling::Spin;

/// Basis of a spin-`j` multiplet: `m = j, j−1, …, −j` (twice-values).
fn ms(tj: i64) -> Vec<i64> {
    (0..=tj).map(|k| tj - 2 * k).collect()
}

/// `⟨j, m−1| J− |j, m⟩ = √((j+m)(j−m+1))`, twice-values in.
fn lower_coeff(tj: i64, tm: i64) -> f64 {
    let (j, m) = (tj as f64 / 2.0, tm as f64 / 2.0);
    ((j + m) * (j - m + 1.0)).max(0.0).sqrt()
}

/// Clebsch-Gordan coefficients `⟨j1 m1 j2 m2 | J M⟩` built by brute force in
/// the product space: the top state of each multiplet is the component of the
/// `M = J` subspace orthogonal to all higher multiplets, phased so that its
/// `m1 = j1` coefficient is positive; lower states follow from `J−`.
pub fn clebsch_gordan(tj1: i64, tj2: i64, tjj: i64, tm1: i64, tm2: i64, tmm: i64) -> f64 {
    if tm1 + tm2 != tmm || tjj < (tj1 - tj2).abs() || tjj > tj1 + tj2 || (tj1 + tj2 + tjj) % 2 != 0
    {
        return 0.0;
    }
    let pairs: Vec<(i64, i64)> = ms(tj1)
        .into_iter()
        .flat_map(|a| ms(tj2).into_iter().map(move |b| (a, b)))
        .collect();
    let index: HashMap<(i64, i64), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let dim = pairs.len();
    let lower = |v: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; dim];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if v[i] == 0.0 {
                continue;
            }
            if a > -tj1 {
                out[index[&(a - 2, b)]] += lower_coeff(tj1, a) * v[i];
            }
            if b > -tj2 {
                out[index[&(a, b - 2)]] += lower_coeff(tj2, b) * v[i];
            }
        }
        let n = out.iter().map(|x| x * x).sum::<f64>().sqrt();
        out.iter().map(|x| x / n).collect()
    };
    // states[J] = list of |J M⟩ from M = J downwards
    let mut tops: Vec<(i64, Vec<f64>)> = Vec::new();
    let mut j = tj1 + tj2;
    while j >= (tj1 - tj2).abs() {
        // start from the M = J subspace, remove components along the M = J
        // members of higher multiplets
        let mut v = vec![0.0; dim];
        let mut seed_done = false;
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if a + b == j && !seed_done && a == tj1.min(j + tj2) {
                v[i] = 1.0;
                seed_done = true;
            }
        }
        for (jj, top) in &tops {
            let mut w = top.clone();
            for _ in 0..(jj - j) / 2 {
                w = lower(&w);
            }
            let dot: f64 = v.iter().zip(&w).map(|(x, y)| x * y).sum();
            for (x, y) in v.iter_mut().zip(&w) {
                *x -= dot * y;
            }
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut v: Vec<f64> = v.iter().map(|x| x / n).collect();
        // Condon-Shortley: ⟨j1 j1; j2 (J − j1) | J J⟩ > 0
        if let Some(&i) = index.get(&(tj1, j - tj1)) {
            if v[i] < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
        }
        tops.push((j, v));
        j -= 2;
    }
    let (_, top) = tops.iter().find(|(jj, _)| *jj == tjj).unwrap();
    let mut w = top.clone();
    for _ in 0..(tjj - tmm) / 2 {
        w = lower(&w);
    }
    w[index[&(tm1, tm2)]]
}

/// 3j symbol from the Clebsch-Gordan oracle.
pub fn three_j_oracle(tj1: i64, tj2: i64, tj3: i64, tm1: i64, tm2: i64, tm3: i64) -> f64 {
    let phase = if ((tj1 - tj2 - tm3) / 2).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    phase / ((tj3 + 1) as f64).sqrt() * clebsch_gordan(tj1, tj2, tj3, tm1, tm2, -tm3)
}

fn s(t: i64) -> Spin {
    Spin::from_twice(t as u32)
}

fn three_j_cached(cache: &mut HashMap<[i64; 6], ExactValue>, k: [i64; 6]) -> ExactValue {
    if let Some(v) = cache.get(&k) {
        return v.clone();
    }
    let v = wigner3j(s(k[0]), s(k[1]), s(k[2]), k[3], k[4], k[5]).unwrap();
    cache.insert(k, v.clone());
    v
}

fn sign(twice: i64) -> BigRational {
    BigRational::from_integer(
        if (twice / 2).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
        .into(),
    )
}

/// 6j symbol as a contraction of four 3j symbols over all projections:
/// `Σ (−1)^{Σ(j−m)} (j1 j2 j3; −m1 −m2 −m3)(j1 j5 j6; m1 −m5 m6)
///  (j4 j2 j6; m4 m2 −m6)(j4 j5 j3; −m4 m5 m3)`.
pub fn six_j_contraction(t: [i64; 6], cache: &mut HashMap<[i64; 6], ExactValue>) -> ExactValue {
    let [j1, j2, j3, j4, j5, j6] = t;
    let mut terms = Vec::new();
    for &m1 in &ms(j1) {
        for &m2 in &ms(j2) {
            let m3 = -m1 - m2;
            if m3.abs() > j3 {
                continue;
            }
            for &m5 in &ms(j5) {
                let m6 = m5 - m1;
                let m4 = m6 - m2;
                if m6.abs() > j6 || m4.abs() > j4 {
                    continue;
                }
                let a = three_j_cached(cache, [j1, j2, j3, -m1, -m2, -m3]);
                if a.is_zero() {
                    continue;
                }
                let b = three_j_cached(cache, [j1, j5, j6, m1, -m5, m6]);
                let c = three_j_cached(cache, [j4, j2, j6, m4, m2, -m6]);
                let d = three_j_cached(cache, [j4, j5, j3, -m4, m5, m3]);
                let ph = (j1 - m1) + (j2 - m2) + (j3 - m3) + (j4 - m4) + (j5 - m5) + (j6 - m6);
                terms.push(a * b * c * d * &sign(ph));
            }
        }
    }
    ExactValue::sum(terms, DEFAULT_DIGITS)
}

/// 9j symbol as a contraction of the six 3j symbols of its rows and columns.
pub fn nine_j_contraction(rows: [[i64; 3]; 3]) -> ExactValue {
    let mut cache = HashMap::new();
    let [[j1, j2, j3], [j4, j5, j6], [j7, j8, j9]] = rows;
    let mut terms = Vec::new();
    for &m1 in &ms(j1) {
        for &m2 in &ms(j2) {
            let m3 = -m1 - m2;
            if m3.abs() > j3 {
                continue;
            }
            for &m4 in &ms(j4) {
                for &m5 in &ms(j5) {
                    let m6 = -m4 - m5;
                    let (m7, m8, m9) = (-m1 - m4, -m2 - m5, -m3 - m6);
                    if m6.abs() > j6 || m7.abs() > j7 || m8.abs() > j8 || m9.abs() > j9 {
                        continue;
                    }
                    let mut p = three_j_cached(&mut cache, [j1, j2, j3, m1, m2, m3]);
                    for k in [
                        [j4, j5, j6, m4, m5, m6],
                        [j7, j8, j9, m7, m8, m9],
                        [j1, j4, j7, m1, m4, m7],
                        [j2, j5, j8, m2, m5, m8],
                        [j3, j6, j9, m3, m6, m9],
                    ] {
                        if p.is_zero() {
                            break;
                        }
                        p = p * three_j_cached(&mut cache, k);
                    }
                    terms.push(p);
                }
            }
        }
    }
    ExactValue::sum(terms, DEFAULT_DIGITS)
}

/// `d^s(θ) = exp(−iθ S_y)` by numerical matrix exponential of the real
/// generator `−θ (S+ − S−) / 2`, rows and columns ordered `m = −s..s`.
pub fn d_matrix_expm(ts: i64, theta: f64) -> DMatrix<f64> {
    let n = (ts + 1) as usize;
    let mut g = DMatrix::zeros(n, n);
    for c in 0..n {
        let tm = 2 * c as i64 - ts;
        if c + 1 < n {
            // S+ |m⟩ = √((s−m)(s+m+1)) |m+1⟩
            let (sv, m) = (ts as f64 / 2.0, tm as f64 / 2.0);
            let v = ((sv - m) * (sv + m + 1.0)).sqrt();
            g[(c + 1, c)] += -theta / 2.0 * v;
            g[(c, c + 1)] -= -theta / 2.0 * v;
        }
    }
    g.exp()
}
