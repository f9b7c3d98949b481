//! Tetrahedra from edge lengths and the two-tetrahedron vector configuration
//! behind the 12j asymptotics.
//!
//! Tetrahedron 1 has vertices `0, J3, J3+J4, J3+J4+J6`; tetrahedron 2 has
//! vertices `0, J3, J3+J1, J3+J1+J5`. They share the triangle with sides
//! `J3, J135, J346`.

use nalgebra::{Matrix3, Rotation3, Vector3};

use crate::error::{Error, Result};
use crate::exact::Symbol12Args;
use crate::spin::{semiclassical_length, SemiclassicalLength, Spin};

pub type Vec3 = Vector3<f64>;

/// Relative size below which a determinant counts as zero.
pub const DEGENERATE_TOL: f64 = 1e-10;

/// Margins below this are reported as near-caustic.
pub const NEAR_CAUSTIC: f64 = 1e-3;

/// Vertex pairs in the order used for per-edge arrays.
pub const EDGE_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Six edge lengths of a tetrahedron with vertices 0..3, keyed by vertex pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairLengths {
    pub d01: f64,
    pub d02: f64,
    pub d03: f64,
    pub d12: f64,
    pub d13: f64,
    pub d23: f64,
}

impl PairLengths {
    /// Lengths in [`EDGE_PAIRS`] order.
    pub fn to_array(self) -> [f64; 6] {
        [self.d01, self.d02, self.d03, self.d12, self.d13, self.d23]
    }

    pub fn from_array(a: [f64; 6]) -> Self {
        PairLengths {
            d01: a[0],
            d02: a[1],
            d03: a[2],
            d12: a[3],
            d13: a[4],
            d23: a[5],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let k = EDGE_PAIRS
            .iter()
            .position(|&p| p == (i, j))
            .expect("vertex pair out of range");
        self.to_array()[k]
    }

    /// Gram matrix of the edge vectors from vertex 0.
    fn gram(&self) -> Matrix3<f64> {
        let sq = |x: f64| x * x;
        let g12 = (sq(self.d01) + sq(self.d02) - sq(self.d12)) / 2.0;
        let g13 = (sq(self.d01) + sq(self.d03) - sq(self.d13)) / 2.0;
        let g23 = (sq(self.d02) + sq(self.d03) - sq(self.d23)) / 2.0;
        Matrix3::new(
            sq(self.d01),
            g12,
            g13,
            g12,
            sq(self.d02),
            g23,
            g13,
            g23,
            sq(self.d03),
        )
    }

    /// `16·area²` of each face, by Heron's formula; negative when the face
    /// violates a triangle inequality.
    fn face_heron(&self) -> [f64; 4] {
        let h = |a: f64, b: f64, c: f64| (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
        [
            h(self.d01, self.d02, self.d12),
            h(self.d01, self.d03, self.d13),
            h(self.d02, self.d03, self.d23),
            h(self.d12, self.d13, self.d23),
        ]
    }

    /// Cayley-Menger determinant `288·volume²`.
    pub fn cayley_menger(&self) -> f64 {
        8.0 * self.gram().determinant()
    }

    /// Scale-free margin `288·volume² / Π edges`; 4 for a regular tetrahedron.
    pub fn margin(&self) -> f64 {
        self.cayley_menger() / self.to_array().iter().product::<f64>()
    }

    fn faces_ok(&self) -> bool {
        let scale = self
            .to_array()
            .iter()
            .fold(0.0f64, |m, &x| m.max(x))
            .powi(4);
        self.face_heron()
            .iter()
            .all(|&h| h >= -DEGENERATE_TOL * scale)
    }
}

/// A tetrahedron embedded with vertex 0 at the origin, vertex 1 on the +z
/// axis and vertex 2 in the xz half-plane with x ≥ 0.
#[derive(Clone, Debug, PartialEq)]
pub struct TetraGeometry {
    pub lengths: PairLengths,
    pub vertices: [Vec3; 4],
    /// Signed triple product of the edge vectors from vertex 0 (six times the
    /// volume); nonnegative in this frame.
    pub triple: f64,
    pub margin: f64,
    pub caustic: bool,
}

impl TetraGeometry {
    /// Edge vectors from vertex 0.
    pub fn edge_vectors(&self) -> [Vec3; 3] {
        [self.vertices[1], self.vertices[2], self.vertices[3]]
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        (self.vertices[i] - self.vertices[j]).norm()
    }
}

/// Embed a tetrahedron from its six edge lengths.
///
/// Fails with [`Error::Forbidden`] when no Euclidean tetrahedron has these
/// edges; a flat one is returned with `caustic` set and zero volume.
pub fn embed_tetrahedron(lengths: PairLengths) -> Result<TetraGeometry> {
    let arr = lengths.to_array();
    if arr.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::Argument(format!(
            "edge lengths must be positive: {arr:?}"
        )));
    }
    let cm = lengths.cayley_menger();
    let margin = lengths.margin();
    if !lengths.faces_ok() || margin < -DEGENERATE_TOL {
        return Err(Error::Forbidden { determinant: cm });
    }
    let caustic = margin.abs() <= DEGENERATE_TOL;

    let g = lengths.gram();
    let a = lengths.d01;
    let z2 = g[(0, 1)] / a;
    let x2 = (g[(1, 1)] - z2 * z2).max(0.0).sqrt();
    let z3 = g[(0, 2)] / a;
    let x3 = if x2 > DEGENERATE_TOL * a {
        (g[(1, 2)] - z2 * z3) / x2
    } else {
        (g[(2, 2)] - z3 * z3).max(0.0).sqrt()
    };
    let y3 = if caustic {
        0.0
    } else {
        (g[(2, 2)] - z3 * z3 - x3 * x3).max(0.0).sqrt()
    };
    let vertices = [
        Vec3::zeros(),
        Vec3::new(0.0, 0.0, a),
        Vec3::new(x2, 0.0, z2),
        Vec3::new(x3, y3, z3),
    ];
    let triple = triple_product(&vertices[1], &vertices[2], &vertices[3]);
    Ok(TetraGeometry {
        lengths,
        vertices,
        triple,
        margin,
        caustic,
    })
}

/// `a · (b × c)`.
pub fn triple_product(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    a.dot(&b.cross(c))
}

/// Exterior dihedral angle `ψ = π − interior` at each edge, in
/// [`EDGE_PAIRS`] order.
pub fn exterior_dihedrals(t: &TetraGeometry) -> Result<[f64; 6]> {
    if t.caustic {
        return Err(Error::Caustic { margin: t.margin });
    }
    let p = &t.vertices;
    Ok(EDGE_PAIRS.map(|(i, j)| {
        let (k, l) = other_two(i, j);
        let e = p[j] - p[i];
        let n1 = e.cross(&(p[k] - p[i]));
        let n2 = e.cross(&(p[l] - p[i]));
        std::f64::consts::PI - clamped_acos(n1.dot(&n2) / (n1.norm() * n2.norm()))
    }))
}

fn other_two(i: usize, j: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&m| m != i && m != j);
    (rest.next().unwrap(), rest.next().unwrap())
}

fn clamped_acos(c: f64) -> f64 {
    c.clamp(-1.0, 1.0).acos()
}

/// The nine lengths fixing the two tetrahedra.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeSet {
    pub j1: SemiclassicalLength,
    pub j3: SemiclassicalLength,
    pub j4: SemiclassicalLength,
    pub j5: SemiclassicalLength,
    pub j6: SemiclassicalLength,
    pub j34: SemiclassicalLength,
    pub j346: SemiclassicalLength,
    pub j13: SemiclassicalLength,
    pub j135: SemiclassicalLength,
}

impl EdgeSet {
    pub fn from_args(a: &Symbol12Args) -> Self {
        let l = |s: Spin| semiclassical_length(s);
        EdgeSet {
            j1: l(a.j1),
            j3: l(a.j3),
            j4: l(a.j4),
            j5: l(a.j5),
            j6: l(a.j6),
            j34: l(a.j34),
            j346: l(a.j346),
            j13: l(a.j13),
            j135: l(a.j135),
        }
    }

    /// Lengths realized by five closing vectors; `j6` is taken as
    /// `−(j1 + j3 + j4 + j5)`.
    pub fn from_vectors(j1: Vec3, j3: Vec3, j4: Vec3, j5: Vec3) -> Self {
        let j6 = -(j1 + j3 + j4 + j5);
        let l = |v: Vec3| SemiclassicalLength(v.norm());
        EdgeSet {
            j1: l(j1),
            j3: l(j3),
            j4: l(j4),
            j5: l(j5),
            j6: l(j6),
            j34: l(j3 + j4),
            j346: l(j3 + j4 + j6),
            j13: l(j1 + j3),
            j135: l(j1 + j3 + j5),
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let s = |x: SemiclassicalLength| SemiclassicalLength(x.get() * factor);
        EdgeSet {
            j1: s(self.j1),
            j3: s(self.j3),
            j4: s(self.j4),
            j5: s(self.j5),
            j6: s(self.j6),
            j34: s(self.j34),
            j346: s(self.j346),
            j13: s(self.j13),
            j135: s(self.j135),
        }
    }

    /// Tetrahedron `0, J3, J3+J4, J3+J4+J6`.
    pub fn tetra1(&self) -> PairLengths {
        PairLengths {
            d01: self.j3.get(),
            d02: self.j34.get(),
            d03: self.j346.get(),
            d12: self.j4.get(),
            d13: self.j135.get(),
            d23: self.j6.get(),
        }
    }

    /// Tetrahedron `0, J3, J3+J1, J3+J1+J5`.
    pub fn tetra2(&self) -> PairLengths {
        PairLengths {
            d01: self.j3.get(),
            d02: self.j13.get(),
            d03: self.j135.get(),
            d12: self.j1.get(),
            d13: self.j346.get(),
            d23: self.j5.get(),
        }
    }
}

/// Relative placement of the two tetrahedra across their shared triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Opposite,
    Same,
}

/// Five closing vectors realizing an [`EdgeSet`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VectorConfig {
    pub j1: Vec3,
    pub j3: Vec3,
    pub j4: Vec3,
    pub j5: Vec3,
    pub j6: Vec3,
    pub orientation: Orientation,
}

impl VectorConfig {
    pub fn j34(&self) -> Vec3 {
        self.j3 + self.j4
    }

    pub fn j346(&self) -> Vec3 {
        self.j3 + self.j4 + self.j6
    }

    pub fn j13(&self) -> Vec3 {
        self.j1 + self.j3
    }

    pub fn j135(&self) -> Vec3 {
        self.j1 + self.j3 + self.j5
    }

    pub fn closure(&self) -> Vec3 {
        self.j1 + self.j3 + self.j4 + self.j5 + self.j6
    }

    pub fn rotated(&self, r: &Rotation3<f64>) -> Self {
        VectorConfig {
            j1: r * self.j1,
            j3: r * self.j3,
            j4: r * self.j4,
            j5: r * self.j5,
            j6: r * self.j6,
            orientation: self.orientation,
        }
    }

    /// Largest relative mismatch between the nine lengths and `edges`, and
    /// the closure defect, both divided by the largest length.
    pub fn residual(&self, edges: &EdgeSet) -> f64 {
        let pairs = [
            (self.j1, edges.j1),
            (self.j3, edges.j3),
            (self.j4, edges.j4),
            (self.j5, edges.j5),
            (self.j6, edges.j6),
            (self.j34(), edges.j34),
            (self.j346(), edges.j346),
            (self.j13(), edges.j13),
            (self.j135(), edges.j135),
        ];
        let scale = pairs.iter().fold(0.0f64, |m, p| m.max(p.1.get()));
        let worst = pairs
            .iter()
            .map(|(v, l)| (v.norm() - l.get()).abs())
            .fold(self.closure().norm(), f64::max);
        worst / scale
    }

    /// `J3 · ((J4+J6) × (J1+J5))`, divided by the cube of the largest length.
    pub fn coplanarity(&self) -> f64 {
        let v = triple_product(&self.j3, &(self.j4 + self.j6), &(self.j1 + self.j5));
        let scale = [self.j1, self.j3, self.j4, self.j5, self.j6]
            .iter()
            .fold(0.0f64, |m, x| m.max(x.norm()));
        v / scale.powi(3)
    }
}

/// Both solutions `J4` of `|J4| = l4`, `|J3 + J4| = l34`, `|J4 − k| = l6`,
/// where `k = J4 + J6`. The first has a positive component along `J3 × k`.
pub fn solve_j4(j3: &Vec3, k: &Vec3, l4: f64, l34: f64, l6: f64) -> Result<[Vec3; 2]> {
    let c = j3.cross(k);
    let scale = j3.norm() * k.norm();
    if c.norm() <= DEGENERATE_TOL * scale {
        return Err(Error::UndefinedAngle("J3, J135"));
    }
    let r3 = (l34 * l34 - l4 * l4 - j3.norm_squared()) / 2.0;
    let rk = (l4 * l4 + k.norm_squared() - l6 * l6) / 2.0;
    // J4 = α J3 + β k + γ (J3 × k)
    let g = nalgebra::Matrix2::new(j3.norm_squared(), j3.dot(k), j3.dot(k), k.norm_squared());
    let ab =
        g.try_inverse().ok_or(Error::UndefinedAngle("J3, J135"))? * nalgebra::Vector2::new(r3, rk);
    let base = j3 * ab[0] + k * ab[1];
    let rest = (l4 * l4 - base.norm_squared()) / (l4 * l4);
    if rest < -DEGENERATE_TOL {
        return Err(Error::Forbidden { determinant: rest });
    }
    if rest.abs() <= DEGENERATE_TOL {
        return Err(Error::Caustic { margin: rest });
    }
    let gamma = (l4 * l4 - base.norm_squared()).sqrt() / c.norm();
    Ok([base + c * gamma, base - c * gamma])
}

/// Both tetrahedra and both vector configurations of an [`EdgeSet`].
#[derive(Clone, Debug)]
pub struct Butterfly {
    pub edges: EdgeSet,
    pub tetra1: TetraGeometry,
    pub tetra2: TetraGeometry,
    pub opposite: VectorConfig,
    pub same: VectorConfig,
}

impl Butterfly {
    pub fn config(&self, o: Orientation) -> &VectorConfig {
        match o {
            Orientation::Opposite => &self.opposite,
            Orientation::Same => &self.same,
        }
    }
}

/// Build the configuration: embed tetrahedron 2 with `J3` along +z and
/// `J1 + J3 + J5` in the xz-plane, then solve for the two `J4` branches.
pub fn butterfly(edges: &EdgeSet) -> Result<Butterfly> {
    let tetra1 = embed_tetrahedron(edges.tetra1())?;
    if tetra1.caustic {
        return Err(Error::Caustic {
            margin: tetra1.margin,
        });
    }
    // vertex order 0, 1, 3, 2 puts J135 in the xz-plane
    let t2 = edges.tetra2();
    let reordered = PairLengths {
        d01: t2.d01,
        d02: t2.d03,
        d03: t2.d02,
        d12: t2.d13,
        d13: t2.d12,
        d23: t2.d23,
    };
    let e2 = embed_tetrahedron(reordered)?;
    if e2.caustic {
        return Err(Error::Caustic { margin: e2.margin });
    }
    let q = [
        e2.vertices[0],
        e2.vertices[1],
        e2.vertices[3],
        e2.vertices[2],
    ];
    let tetra2 = TetraGeometry {
        lengths: t2,
        vertices: q,
        triple: triple_product(&q[1], &q[2], &q[3]),
        margin: e2.margin,
        caustic: false,
    };

    let j3 = q[1];
    let j1 = q[2] - q[1];
    let j5 = q[3] - q[2];
    let k = -(j1 + j3 + j5);
    let branches = solve_j4(&j3, &k, edges.j4.get(), edges.j34.get(), edges.j6.get())?;
    let n = j3.cross(&(j3 + k));
    let side1 = j1.dot(&n).signum();
    let make = |j4: Vec3| {
        let orientation = if j4.dot(&n).signum() != side1 {
            Orientation::Same
        } else {
            Orientation::Opposite
        };
        VectorConfig {
            j1,
            j3,
            j4,
            j5,
            j6: k - j4,
            orientation,
        }
    };
    let [a, b] = branches.map(make);
    let (opposite, same) = match (a.orientation, b.orientation) {
        (Orientation::Opposite, Orientation::Same) => (a, b),
        (Orientation::Same, Orientation::Opposite) => (b, a),
        _ => return Err(Error::Caustic { margin: 0.0 }),
    };
    Ok(Butterfly {
        edges: *edges,
        tetra1,
        tetra2,
        opposite,
        same,
    })
}

/// The configuration of one orientation class.
pub fn butterfly_config(edges: &EdgeSet, orientation: Orientation) -> Result<VectorConfig> {
    butterfly(edges).map(|b| *b.config(orientation))
}

/// Angle between `J1` and `J4`.
pub fn theta(cfg: &VectorConfig) -> f64 {
    clamped_acos(cfg.j1.dot(&cfg.j4) / (cfg.j1.norm() * cfg.j4.norm()))
}

/// `π − ∠(a×b, a×c)`.
fn plane_angle(a: &Vec3, b: &Vec3, c: &Vec3, names: [&'static str; 2]) -> Result<f64> {
    let x = a.cross(b);
    let y = a.cross(c);
    for (v, u, name) in [(x, b, names[0]), (y, c, names[1])] {
        if v.norm() <= DEGENERATE_TOL * a.norm() * u.norm() {
            return Err(Error::UndefinedAngle(name));
        }
    }
    Ok(std::f64::consts::PI - clamped_acos(x.dot(&y) / (x.norm() * y.norm())))
}

/// `(θ, φ1, φ4)`: θ between `J1` and `J4`, φ1 from `(J1×J4)·(J1×J5)`, φ4 from
/// `(J4×J1)·(J4×J6)`.
pub fn angles_theta_phi(cfg: &VectorConfig) -> Result<(f64, f64, f64)> {
    let phi1 = plane_angle(&cfg.j1, &cfg.j4, &cfg.j5, ["J1, J4", "J1, J5"])?;
    let phi4 = plane_angle(&cfg.j4, &cfg.j1, &cfg.j6, ["J4, J1", "J4, J6"])?;
    Ok((theta(cfg), phi1, phi4))
}

/// Whether both tetrahedra exist with positive volume, with their
/// scale-free Cayley-Menger margins.
pub fn classically_allowed(edges: &EdgeSet) -> (bool, f64, f64) {
    let (t1, t2) = (edges.tetra1(), edges.tetra2());
    let (m1, m2) = (t1.margin(), t2.margin());
    let allowed = m1 > DEGENERATE_TOL && m2 > DEGENERATE_TOL && t1.faces_ok() && t2.faces_ok();
    (allowed, m1, m2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn regular(l: f64) -> PairLengths {
        PairLengths::from_array([l; 6])
    }

    #[test]
    fn regular_tetrahedron() {
        let t = embed_tetrahedron(regular(1.0)).unwrap();
        assert_relative_eq!(t.triple, 1.0 / 2f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(t.margin, 4.0, epsilon = 1e-12);
        for psi in exterior_dihedrals(&t).unwrap() {
            assert_relative_eq!(psi, PI - (1.0f64 / 3.0).acos(), epsilon = 1e-12);
        }
    }

    #[test]
    fn face_violation_is_forbidden() {
        let l = PairLengths::from_array([1.0, 1.0, 1.0, 3.0, 1.0, 1.0]);
        assert!(matches!(embed_tetrahedron(l), Err(Error::Forbidden { .. })));
    }

    #[test]
    fn flat_tetrahedron_is_caustic() {
        // a unit square with its diagonals
        let d = 2f64.sqrt();
        let l = PairLengths::from_array([1.0, d, 1.0, 1.0, d, 1.0]);
        let t = embed_tetrahedron(l).unwrap();
        assert!(t.caustic);
        assert_eq!(t.triple.abs(), 0.0);
        assert!(matches!(exterior_dihedrals(&t), Err(Error::Caustic { .. })));
        assert!(t.vertices.iter().all(|v| v.iter().all(|x| x.is_finite())));
    }

    #[test]
    fn triple_product_basics() {
        let (x, y, z) = (Vec3::x(), Vec3::y(), Vec3::z());
        assert_eq!(triple_product(&x, &y, &z), 1.0);
        assert_eq!(triple_product(&x, &x, &z), 0.0);
    }

    #[test]
    fn theta_for_parallel_vectors() {
        let cfg = VectorConfig {
            j1: Vec3::new(0.0, 0.0, 2.0),
            j3: Vec3::x(),
            j4: Vec3::new(0.0, 0.0, 3.0),
            j5: Vec3::y(),
            j6: -Vec3::new(1.0, 1.0, 5.0),
            orientation: Orientation::Opposite,
        };
        assert_eq!(theta(&cfg), 0.0);
        assert!(matches!(
            angles_theta_phi(&cfg),
            Err(Error::UndefinedAngle("J1, J4"))
        ));
    }

    #[test]
    fn phi_against_plane_angle() {
        // J1 along z, J4 along x, J5 in their plane: the planes (J1,J4) and
        // (J1,J5) coincide, so φ1 is π when J5 leans toward +x and 0 when
        // it leans toward −x
        let mk = |j5: Vec3| VectorConfig {
            j1: Vec3::z(),
            j3: Vec3::y(),
            j4: Vec3::x(),
            j5,
            j6: -(Vec3::z() + Vec3::y() + Vec3::x() + j5),
            orientation: Orientation::Opposite,
        };
        let (_, phi1, _) = angles_theta_phi(&mk(Vec3::new(1.0, 0.0, 1.0))).unwrap();
        assert_relative_eq!(phi1, PI, epsilon = 1e-7);
        let (th, phi1, _) = angles_theta_phi(&mk(Vec3::new(-1.0, 0.0, 1.0))).unwrap();
        assert_relative_eq!(phi1, 0.0, epsilon = 1e-7);
        assert_relative_eq!(th, PI / 2.0, epsilon = 1e-14);
    }
}
