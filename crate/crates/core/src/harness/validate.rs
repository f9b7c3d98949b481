//! Identity suites over seeded random tuples.

use std::fmt;

use nalgebra::{Rotation3, Unit};
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::{
    twelve_j_zero_j5, twelve_j_zero_s2_with, wigner12j_first, wigner6j, ExactValue, Symbol12Args,
    DEFAULT_DIGITS,
};
use crate::geometry::{
    angles_theta_phi, butterfly, classically_allowed, embed_tetrahedron, exterior_dihedrals,
    solve_j4, EdgeSet, Vec3, EDGE_PAIRS,
};
use crate::spin::{triangle_twice, Spin};

/// Signature of a 6j implementation, so suites can be run against a
/// deliberately broken one.
pub type SixJ = fn(Spin, Spin, Spin, Spin, Spin, Spin) -> ExactValue;

/// Digits of agreement required between the two sides of an identity.
pub const REQUIRED_DIGITS: u32 = 25;

#[derive(Clone, Debug)]
pub struct ValidateOptions {
    pub seed: u64,
    pub tuples: usize,
    pub sixj: SixJ,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            seed: 0,
            tuples: 200,
            sixj: wigner6j,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            passed: 0,
            failed: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<6} {:<24} {} passed, {} failed",
            if self.ok() { "PASS" } else { "FAIL" },
            self.name,
            self.passed,
            self.failed
        )?;
        if let Some(d) = &self.first_failure {
            write!(f, " (first: {d})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ValidateReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl ValidateReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }
}

impl fmt::Display for ValidateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        write!(
            f,
            "{}",
            if self.all_passed() {
                "all suites passed"
            } else {
                "FAILED"
            }
        )
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random twice-value `c ≤ max` with `(a, b, c)` a triad.
pub fn pick_third<R: Rng>(rng: &mut R, a: u32, b: u32, max: u32) -> Option<u32> {
    let lo = a.abs_diff(b);
    let hi = (a + b).min(max);
    if lo > hi {
        return None;
    }
    let n = (hi - lo) / 2 + 1;
    Some(lo + 2 * rng.gen_range(0..n))
}

/// A random twice-value `≤ max` forming triads with both pairs.
pub fn pick_common<R: Rng>(rng: &mut R, pairs: &[(u32, u32)], max: u32) -> Option<u32> {
    let lo = pairs.iter().map(|&(a, b)| a.abs_diff(b)).max()?;
    let hi = pairs.iter().map(|&(a, b)| a + b).min()?.min(max);
    let options: Vec<u32> = (lo..=hi)
        .filter(|&c| pairs.iter().all(|&(a, b)| triangle_twice(a, b, c)))
        .collect();
    if options.is_empty() {
        None
    } else {
        Some(options[rng.gen_range(0..options.len())])
    }
}

fn spins(tw: [u32; 12]) -> Symbol12Args {
    Symbol12Args::from_array(tw.map(Spin::from_twice))
}

/// Random admissible tuple with `s2 = 0`, `j12 = j1`, `j24 = j4` and every
/// twice-value at most `max`.
pub fn random_zero_s2_args<R: Rng>(rng: &mut R, max: u32) -> Symbol12Args {
    loop {
        let j1 = rng.gen_range(0..=max);
        let j3 = rng.gen_range(0..=max);
        let j4 = rng.gen_range(0..=max);
        let j5 = rng.gen_range(0..=max);
        let Some(j13) = pick_third(rng, j1, j3, max) else {
            continue;
        };
        let Some(j34) = pick_third(rng, j3, j4, max) else {
            continue;
        };
        let Some(j135) = pick_third(rng, j13, j5, max) else {
            continue;
        };
        let Some(j346) = pick_third(rng, j1, j5, max) else {
            continue;
        };
        let Some(j6) = pick_common(rng, &[(j34, j346), (j4, j135)], max) else {
            continue;
        };
        let a = spins([j1, 0, j1, j346, j3, j4, j34, j135, j13, j4, j5, j6]);
        debug_assert!(a.is_admissible());
        return a;
    }
}

/// Random admissible tuple with `j5 = 0`, `j346 = j12`, `j135 = j13`.
pub fn random_zero_j5_args<R: Rng>(rng: &mut R, max: u32) -> Symbol12Args {
    loop {
        let j1 = rng.gen_range(0..=max);
        let s = rng.gen_range(0..=max);
        let j3 = rng.gen_range(0..=max);
        let j4 = rng.gen_range(0..=max);
        let Some(j12) = pick_third(rng, j1, s, max) else {
            continue;
        };
        let Some(j34) = pick_third(rng, j3, j4, max) else {
            continue;
        };
        let Some(j13) = pick_third(rng, j1, j3, max) else {
            continue;
        };
        let Some(j24) = pick_third(rng, s, j4, max) else {
            continue;
        };
        let Some(j6) = pick_common(rng, &[(j34, j12), (j24, j13)], max) else {
            continue;
        };
        let a = spins([j1, s, j12, j12, j3, j4, j34, j13, j13, j24, 0, j6]);
        debug_assert!(a.is_admissible());
        return a;
    }
}

fn agree(a: &ExactValue, b: &ExactValue) -> bool {
    a.agreement_digits(b) >= REQUIRED_DIGITS
}

pub fn zero_s2_suite<R: Rng>(rng: &mut R, n: usize, sixj: SixJ) -> SuiteResult {
    let mut r = SuiteResult::new("12j = two 6j (s2 = 0)");
    for _ in 0..n {
        let args = random_zero_s2_args(rng, 60);
        let lhs = wigner12j_first(&args);
        let rhs = twelve_j_zero_s2_with(&args, sixj).expect("pattern holds by construction");
        r.record(agree(&lhs, &rhs), || {
            format!("{args}: {lhs:.20} vs {rhs:.20}")
        });
    }
    r
}

pub fn zero_j5_suite<R: Rng>(rng: &mut R, n: usize) -> SuiteResult {
    let mut r = SuiteResult::new("12j = 9j (j5 = 0)");
    for _ in 0..n {
        let args = random_zero_j5_args(rng, 60);
        let lhs = wigner12j_first(&args);
        let rhs = twelve_j_zero_j5(&args).expect("pattern holds by construction");
        r.record(agree(&lhs, &rhs), || {
            format!("{args}: {lhs:.20} vs {rhs:.20}")
        });
    }
    r
}

fn spin_range(lo: u32, hi: u32) -> impl Iterator<Item = Spin> {
    (lo..=hi).step_by(2).map(Spin::from_twice)
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `Σ_x [x][p] {a b x; c d p}{a b x; c d q} = δ_pq`.
pub fn orthogonality_suite<R: Rng>(rng: &mut R, n: usize, sixj: SixJ) -> SuiteResult {
    let mut r = SuiteResult::new("6j orthogonality");
    let max = 12;
    let mut done = 0;
    while done < n {
        let [a, b, c, d] = [(); 4].map(|_| rng.gen_range(0..=max));
        let Some(p) = pick_common(rng, &[(a, d), (c, b)], max) else {
            continue;
        };
        let Some(q) = pick_common(rng, &[(a, d), (c, b)], max) else {
            continue;
        };
        let lo = a.abs_diff(b).max(c.abs_diff(d));
        let hi = (a + b).min(c + d);
        if lo > hi || (a + b + lo) % 2 != 0 {
            continue;
        }
        let s = Spin::from_twice;
        let terms = spin_range(lo, hi).map(|x| {
            let w = int(i64::from(x.bracket()) * i64::from(s(p).bracket()));
            sixj(s(a), s(b), x, s(c), s(d), s(p)) * sixj(s(a), s(b), x, s(c), s(d), s(q)) * &w
        });
        let lhs = ExactValue::sum(terms, DEFAULT_DIGITS);
        let rhs = ExactValue::from_integer(i64::from(p == q));
        r.record(agree(&lhs, &rhs), || {
            format!("a b c d p q = {a} {b} {c} {d} {p} {q} (twice): {lhs:.12}")
        });
        done += 1;
    }
    r
}

/// Biedenharn-Elliott identity
/// `Σ_x (−1)^{S+x} [x] {a b x; c d p}{c d x; e f q}{e f x; b a r}
///  = {p q r; e a d}{p q r; f b c}`, `S` the sum of the nine fixed spins.
pub fn pentagon_suite<R: Rng>(rng: &mut R, n: usize, sixj: SixJ) -> SuiteResult {
    let mut r = SuiteResult::new("pentagon identity");
    let max = 12;
    let mut done = 0;
    while done < n {
        let [a, b, c, d, e, f] = [(); 6].map(|_| rng.gen_range(0..=max));
        let Some(p) = pick_common(rng, &[(a, d), (b, c)], max) else {
            continue;
        };
        let Some(q) = pick_common(rng, &[(c, f), (d, e)], max) else {
            continue;
        };
        let Some(rr) = pick_common(rng, &[(a, e), (b, f), (p, q)], max) else {
            continue;
        };
        let lo = a.abs_diff(b).max(c.abs_diff(d)).max(e.abs_diff(f));
        let hi = (a + b).min(c + d).min(e + f);
        let xs: Vec<Spin> = spin_range(lo, hi)
            .filter(|x| {
                let t = x.twice();
                triangle_twice(a, b, t) && triangle_twice(c, d, t) && triangle_twice(e, f, t)
            })
            .collect();
        if xs.is_empty() {
            continue;
        }
        let s = Spin::from_twice;
        let total = i64::from(a + b + c + d + e + f + p + q + rr);
        let terms = xs.iter().map(|&x| {
            let ph = (total + i64::from(x.twice())) / 2;
            let w = int(if ph % 2 == 0 { 1 } else { -1 } * i64::from(x.bracket()));
            sixj(s(a), s(b), x, s(c), s(d), s(p))
                * sixj(s(c), s(d), x, s(e), s(f), s(q))
                * sixj(s(e), s(f), x, s(b), s(a), s(rr))
                * &w
        });
        let lhs = ExactValue::sum(terms, DEFAULT_DIGITS);
        let rhs =
            sixj(s(p), s(q), s(rr), s(e), s(a), s(d)) * sixj(s(p), s(q), s(rr), s(f), s(b), s(c));
        r.record(agree(&lhs, &rhs), || {
            format!(
                "a..f p q r = {a} {b} {c} {d} {e} {f} {p} {q} {rr} (twice): {lhs:.12} vs {rhs:.12}"
            )
        });
        done += 1;
    }
    r
}

/// Tolerances of the geometry suite.
pub const LENGTH_TOL: f64 = 1e-12;
pub const COPLANAR_TOL: f64 = 1e-10;
pub const ROTATION_TOL: f64 = 1e-10;

pub fn random_vector<R: Rng>(rng: &mut R, scale: f64) -> Vec3 {
    Vec3::new(
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
    )
}

pub fn random_rotation<R: Rng>(rng: &mut R) -> Rotation3<f64> {
    loop {
        let axis = random_vector(rng, 1.0);
        if axis.norm() > 1e-3 {
            let angle = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            return Rotation3::from_axis_angle(&Unit::new_normalize(axis), angle);
        }
    }
}

/// A random realizable edge set whose tetrahedra are comfortably
/// non-degenerate.
pub fn random_edge_set<R: Rng>(rng: &mut R) -> EdgeSet {
    loop {
        let scale = 10f64.powf(rng.gen_range(0.0..2.5));
        let v = [(); 4].map(|_| random_vector(rng, scale));
        let e = EdgeSet::from_vectors(v[0], v[1], v[2], v[3]);
        let (ok, m1, m2) = classically_allowed(&e);
        if ok && m1 > 1e-3 && m2 > 1e-3 {
            return e;
        }
    }
}

/// An edge set whose first tetrahedron is flat (`J3`, `J4`, `J6` coplanar).
pub fn flat_edge_set<R: Rng>(rng: &mut R) -> EdgeSet {
    let mut v = [(); 4].map(|_| random_vector(rng, 10.0));
    // J1 is chosen so that J6 = −(J1+J3+J4+J5) lies in the plane z = 0
    // together with J3 and J4
    v[1].z = 0.0;
    v[2].z = 0.0;
    v[0].z = -v[3].z;
    EdgeSet::from_vectors(v[0], v[1], v[2], v[3])
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Checks one random edge set; `Err` names the first broken property.
pub fn check_geometry<R: Rng>(rng: &mut R, edges: &EdgeSet) -> Result<(), String> {
    let b = butterfly(edges).map_err(|e| format!("construction failed: {e}"))?;
    for cfg in [&b.opposite, &b.same] {
        let res = cfg.residual(edges);
        if !(res <= LENGTH_TOL) {
            return Err(format!(
                "length/closure residual {res:e} ({:?})",
                cfg.orientation
            ));
        }
        let cop = cfg.coplanarity();
        if !(cop.abs() <= COPLANAR_TOL) {
            return Err(format!("shared face not coplanar: {cop:e}"));
        }
    }
    for t in [&b.tetra1, &b.tetra2] {
        for &(i, j) in &EDGE_PAIRS {
            let (d, l) = (t.distance(i, j), t.lengths.get(i, j));
            if !close(d, l, LENGTH_TOL) {
                return Err(format!("embedded edge {i}{j}: {d} vs {l}"));
            }
        }
    }

    // the two J4 branches: equal residuals, mirror images across span(J3, K)
    let (j3, k) = (b.opposite.j3, b.opposite.j4 + b.opposite.j6);
    let (l4, l34, l6) = (edges.j4.get(), edges.j34.get(), edges.j6.get());
    let [p, m] = solve_j4(&j3, &k, l4, l34, l6).map_err(|e| format!("solve_j4: {e}"))?;
    let resid = |v: Vec3| {
        ((v.norm() - l4).abs() + ((j3 + v).norm() - l34).abs() + ((k - v).norm() - l6).abs())
            / l4.max(l34).max(l6)
    };
    if !(resid(p) <= LENGTH_TOL && resid(m) <= LENGTH_TOL) {
        return Err(format!("J4 residuals {:e}, {:e}", resid(p), resid(m)));
    }
    let n = j3.cross(&k);
    let (sp, sm) = (p.dot(&n), m.dot(&n));
    if !(sp > 0.0 && sm < 0.0) {
        return Err(format!("J4 branches not mirrored: {sp:e}, {sm:e}"));
    }
    let reflected = p - n * (2.0 * sp / n.norm_squared());
    if !((reflected - m).norm() <= LENGTH_TOL * l4.max(1.0) * 10.0) {
        return Err("J4 branches are not mirror images".into());
    }

    // a common rotation leaves angles, volumes and dihedrals unchanged
    let rot = random_rotation(rng);
    for cfg in [&b.opposite, &b.same] {
        let a0 = angles_theta_phi(cfg).map_err(|e| e.to_string())?;
        let a1 = angles_theta_phi(&cfg.rotated(&rot)).map_err(|e| e.to_string())?;
        for (x, y) in [(a0.0, a1.0), (a0.1, a1.1), (a0.2, a1.2)] {
            if !close(x, y, ROTATION_TOL) {
                return Err(format!("angle changed under rotation: {x} vs {y}"));
            }
        }
    }
    for t in [&b.tetra1, &b.tetra2] {
        let mut rt = t.clone();
        rt.vertices = t.vertices.map(|v| rot * v);
        let [p1, p2, p3] = rt.edge_vectors();
        let vol = crate::geometry::triple_product(&p1, &p2, &p3);
        if !close(vol.abs(), t.triple.abs(), ROTATION_TOL) {
            return Err(format!(
                "volume changed under rotation: {vol} vs {}",
                t.triple
            ));
        }
        let d0 = exterior_dihedrals(t).map_err(|e| e.to_string())?;
        let d1 = exterior_dihedrals(&rt).map_err(|e| e.to_string())?;
        if d0
            .iter()
            .zip(&d1)
            .any(|(x, y)| !close(*x, *y, ROTATION_TOL))
        {
            return Err("dihedrals changed under rotation".into());
        }
    }

    let big = edges.scaled(3.7);
    let (_, m1, m2) = classically_allowed(edges);
    let (_, s1, s2) = classically_allowed(&big);
    if !close(m1, s1, 1e-10) || !close(m2, s2, 1e-10) {
        return Err("margins not scale invariant".into());
    }
    Ok(())
}

/// A flat configuration must be flagged, with finite margins and vertices.
pub fn check_flat(edges: &EdgeSet) -> Result<(), String> {
    let (allowed, m1, m2) = classically_allowed(edges);
    if allowed || !m1.is_finite() || !m2.is_finite() {
        return Err(format!(
            "flat input not flagged: allowed={allowed}, margins {m1:e} {m2:e}"
        ));
    }
    match embed_tetrahedron(edges.tetra1()) {
        Ok(t) if t.caustic && t.vertices.iter().all(|v| v.iter().all(|x| x.is_finite())) => Ok(()),
        Ok(t) => Err(format!(
            "flat tetrahedron not marked caustic (margin {:e})",
            t.margin
        )),
        Err(e) => Err(format!("flat tetrahedron rejected: {e}")),
    }
}

pub fn geometry_suite<R: Rng>(rng: &mut R, n: usize) -> SuiteResult {
    let mut r = SuiteResult::new("geometry invariants");
    for _ in 0..n {
        let e = random_edge_set(rng);
        let res = check_geometry(rng, &e);
        r.record(res.is_ok(), || res.unwrap_err());
    }
    for _ in 0..n.div_ceil(10) {
        let e = flat_edge_set(rng);
        let res = check_flat(&e);
        r.record(res.is_ok(), || res.unwrap_err());
    }
    r
}

pub fn validate(opts: &ValidateOptions) -> ValidateReport {
    let mut g = rng(opts.seed);
    let n = opts.tuples;
    let suites = vec![
        zero_s2_suite(&mut g, n, opts.sixj),
        zero_j5_suite(&mut g, n),
        orthogonality_suite(&mut g, n, opts.sixj),
        pentagon_suite(&mut g, n, opts.sixj),
        geometry_suite(&mut g, n),
    ];
    ValidateReport {
        seed: opts.seed,
        suites,
    }
}
