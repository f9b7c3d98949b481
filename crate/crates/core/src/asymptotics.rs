//! Semiclassical approximations: the Ponzano-Regge 6j formula and the
//! asymptotic 12j symbol with one small spin.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use nalgebra::Rotation3;

use crate::dmatrix::{little_d, DIndex};
use crate::error::{Error, Result};
use crate::exact::Symbol12Args;
use crate::geometry::{
    angles_theta_phi, butterfly, classically_allowed, embed_tetrahedron, exterior_dihedrals,
    EdgeSet, PairLengths, TetraGeometry, VectorConfig, NEAR_CAUSTIC,
};
use crate::spin::{semiclassical_length, Spin};

/// `S = Σ (j + ½) ψ` over the six edges of a tetrahedron.
#[derive(Clone, Debug, PartialEq)]
pub struct PRPhase {
    pub s: f64,
    /// `(j + ½, ψ)` per edge, in the geometry's edge order.
    pub terms: Vec<(f64, f64)>,
}

/// Phase of a tetrahedron whose edges carry `spins` (in
/// [`crate::geometry::EDGE_PAIRS`] order).
pub fn pr_phase(t: &TetraGeometry, spins: [Spin; 6]) -> Result<PRPhase> {
    let psi = exterior_dihedrals(t)?;
    let terms: Vec<(f64, f64)> = spins
        .iter()
        .zip(psi)
        .map(|(&j, p)| (semiclassical_length(j).get(), p))
        .collect();
    Ok(PRPhase {
        s: terms.iter().map(|(l, p)| l * p).sum(),
        terms,
    })
}

/// Tetrahedron of the 6j symbol `{a b c; d e f}`: `a = 01`, `b = 02`,
/// `c = 12`, `d = 23`, `e = 13`, `f = 03`.
pub fn six_j_spins_by_edge(a: Spin, b: Spin, c: Spin, d: Spin, e: Spin, f: Spin) -> [Spin; 6] {
    [a, b, f, c, e, d]
}

/// Ponzano-Regge approximation `cos(S + π/4) / √(2π|V|)` with `V` six times
/// the volume.
pub fn pr_6j(a: Spin, b: Spin, c: Spin, d: Spin, e: Spin, f: Spin) -> Result<f64> {
    let spins = six_j_spins_by_edge(a, b, c, d, e, f);
    let lengths = PairLengths::from_array(spins.map(|j| semiclassical_length(j).get()));
    let t = embed_tetrahedron(lengths)?;
    if t.caustic {
        return Err(Error::Caustic { margin: t.margin });
    }
    let phase = pr_phase(&t, spins)?;
    Ok((phase.s + FRAC_PI_4).cos() / (2.0 * PI * t.triple.abs()).sqrt())
}

/// Angles of one orientation class.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassAngles {
    pub theta: f64,
    pub phi1: f64,
    pub phi4: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Asym12jResult {
    pub value: f64,
    /// `d(θ⁽¹⁾)·cos(S1 + S2 − μφ1⁽¹⁾ + νφ4⁽¹⁾ + π/2)`
    pub term1: f64,
    /// `d(θ⁽²⁾)·cos(S1 − S2 − μφ1⁽²⁾ + νφ4⁽²⁾)`, entering with `(−1)^{2s}`
    pub term2: f64,
    pub prefactor: f64,
    pub opposite: ClassAngles,
    pub same: ClassAngles,
    pub s1: f64,
    pub s2: f64,
    pub v135: f64,
    pub v346: f64,
    pub margin1: f64,
    pub margin2: f64,
    pub near_caustic: bool,
}

fn sign_twice(twice_exponent: i64) -> f64 {
    debug_assert!(twice_exponent % 2 == 0);
    if (twice_exponent / 2).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Asymptotic 12j symbol for large spins except `s2`.
pub fn asym12j(args: &Symbol12Args) -> Result<Asym12jResult> {
    asym12j_in_frame(args, &Rotation3::identity())
}

/// [`asym12j`] with the vector configuration rotated by `frame` before the
/// angles are taken; the result does not depend on `frame`.
pub fn asym12j_in_frame(args: &Symbol12Args, frame: &Rotation3<f64>) -> Result<Asym12jResult> {
    let tw = |s: Spin| i64::from(s.twice());
    let s = tw(args.s2);
    let mu = tw(args.j12) - tw(args.j1);
    let nu = tw(args.j24) - tw(args.j4);
    let idx = DIndex::new(args.s2, nu, mu)?;
    if !args.is_admissible() {
        return Err(Error::Argument(format!("selection rules fail for {args}")));
    }

    let edges = EdgeSet::from_args(args);
    let (allowed, margin1, margin2) = classically_allowed(&edges);
    if !allowed {
        return Err(Error::Region { margin1, margin2 });
    }
    let b = butterfly(&edges)?;
    let class = |cfg: &VectorConfig| -> Result<ClassAngles> {
        let (theta, phi1, phi4) = angles_theta_phi(&cfg.rotated(frame))?;
        Ok(ClassAngles { theta, phi1, phi4 })
    };
    let opposite = class(&b.opposite)?;
    let same = class(&b.same)?;

    let s1 = pr_phase(
        &b.tetra1,
        [args.j3, args.j34, args.j346, args.j4, args.j135, args.j6],
    )?
    .s;
    let s2 = pr_phase(
        &b.tetra2,
        [args.j3, args.j13, args.j135, args.j1, args.j346, args.j5],
    )?
    .s;
    let v346 = b.tetra1.triple.abs();
    let v135 = b.tetra2.triple.abs();

    let exponent = tw(args.j1)
        + 2 * tw(args.j3)
        + tw(args.j4)
        + tw(args.j346)
        + tw(args.j135)
        + tw(args.j5)
        + tw(args.j6)
        - s
        + mu;
    let dims = f64::from(args.j12.bracket()) * f64::from(args.j24.bracket());
    let prefactor = sign_twice(exponent) / (4.0 * PI * (v135 * v346).sqrt() * dims.sqrt());

    let (muf, nuf) = (mu as f64 / 2.0, nu as f64 / 2.0);
    let term1 = little_d(idx, opposite.theta)
        * (s1 + s2 - muf * opposite.phi1 + nuf * opposite.phi4 + FRAC_PI_2).cos();
    let term2 = little_d(idx, same.theta) * (s1 - s2 - muf * same.phi1 + nuf * same.phi4).cos();
    let relative = if s % 2 == 0 { 1.0 } else { -1.0 };

    Ok(Asym12jResult {
        value: prefactor * (term1 + relative * term2),
        term1,
        term2,
        prefactor,
        opposite,
        same,
        s1,
        s2,
        v135,
        v346,
        margin1,
        margin2,
        near_caustic: margin1 < NEAR_CAUSTIC || margin2 < NEAR_CAUSTIC,
    })
}
