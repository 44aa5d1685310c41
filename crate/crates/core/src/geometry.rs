//! Box-surface geometry: unit squares, edges, the rolling transfer relation,
//! and the rotation group of a box.
//!
//! The surface of an `a x b x c` box is modelled as `f = 2(ab+ac+bc)` unit
//! squares embedded in 3-space. Coordinates are doubled so that square
//! centers and edge midpoints stay integral: the box occupies
//! `[0,2a] x [0,2b] x [0,2c]` and a square center has exactly one coordinate
//! on the boundary.
//!
//! Each face carries a fixed `(u, v)` chart (frozen below, so square ids are
//! stable across runs):
//!
//! | face | plane  | u axis | v axis | chart arrow |
//! |------|--------|--------|--------|-------------|
//! | XNeg | x = 0  | +y     | +z     | +z          |
//! | XPos | x = 2a | +y     | +z     | +z          |
//! | YNeg | y = 0  | +x     | +z     | +z          |
//! | YPos | y = 2b | +x     | +z     | +z          |
//! | ZNeg | z = 0  | +x     | +y     | +y          |
//! | ZPos | z = 2c | +x     | +y     | +y          |
//!
//! A *flag* pairs a surface square with a board direction: it records that
//! the square sits in some board cell with its chart arrow pointing toward
//! that direction. Board rotation convention: with the square printed side
//! up, rotating a board direction counterclockwise corresponds to rotating
//! the square's tangent vector by `n x t` (outward normal `n`).

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Integer 3-vector in doubled surface coordinates.
type V3 = [i32; 3];

fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn neg(a: V3) -> V3 {
    [-a[0], -a[1], -a[2]]
}

fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// `(n x)^k t`: rotate tangent `t` about the normal `n`, `k` quarter turns.
fn cross_pow(n: V3, t: V3, k: u8) -> V3 {
    let mut out = t;
    for _ in 0..k {
        out = cross(n, out);
    }
    out
}

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("box dimensions must be positive, got {0}x{1}x{2}")]
    NonPositiveDimension(u32, u32, u32),
}

/// Dimensions of a box, normalized so `a <= b <= c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxSpec {
    a: u32,
    b: u32,
    c: u32,
}

impl BoxSpec {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self, GeometryError> {
        if a == 0 || b == 0 || c == 0 {
            return Err(GeometryError::NonPositiveDimension(a, b, c));
        }
        let mut d = [a, b, c];
        d.sort_unstable();
        Ok(Self {
            a: d[0],
            b: d[1],
            c: d[2],
        })
    }

    pub fn dims(&self) -> (u32, u32, u32) {
        (self.a, self.b, self.c)
    }

    /// `2(ab + ac + bc)`, the number of surface unit squares.
    pub fn surface_area(&self) -> usize {
        let (a, b, c) = (self.a as usize, self.b as usize, self.c as usize);
        2 * (a * b + a * c + b * c)
    }
}

impl fmt::Display for BoxSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}x{}", self.a, self.b, self.c)
    }
}

impl std::str::FromStr for BoxSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split('x').collect();
        if parts.len() != 3 {
            return Err(format!("expected AxBxC, got {s:?}"));
        }
        let dims: Vec<u32> = parts
            .iter()
            .map(|p| p.trim().parse().map_err(|e| format!("bad dimension {p:?}: {e}")))
            .collect::<Result<_, _>>()?;
        BoxSpec::new(dims[0], dims[1], dims[2]).map_err(|e| e.to_string())
    }
}

/// One of the four board directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "U")]
    Up,
    #[serde(rename = "R")]
    Right,
    #[serde(rename = "D")]
    Down,
    #[serde(rename = "L")]
    Left,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Up,
        Direction::Right,
        Direction::Down,
        Direction::Left,
    ];

    pub fn index(self) -> usize {
        match self {
            Direction::Up => 0,
            Direction::Right => 1,
            Direction::Down => 2,
            Direction::Left => 3,
        }
    }

    pub fn rotate_ccw(self) -> Direction {
        match self {
            Direction::Up => Direction::Left,
            Direction::Left => Direction::Down,
            Direction::Down => Direction::Right,
            Direction::Right => Direction::Up,
        }
    }

    pub fn rotate_cw(self) -> Direction {
        match self {
            Direction::Up => Direction::Right,
            Direction::Right => Direction::Down,
            Direction::Down => Direction::Left,
            Direction::Left => Direction::Up,
        }
    }

    pub fn opposite(self) -> Direction {
        self.rotate_ccw().rotate_ccw()
    }

    /// Number of counterclockwise quarter turns taking `self` to `to`.
    pub fn ccw_steps_to(self, to: Direction) -> u8 {
        let mut d = self;
        for k in 0..4 {
            if d == to {
                return k;
            }
            d = d.rotate_ccw();
        }
        unreachable!()
    }

    /// Unit step on the board grid: x grows rightward, y grows upward.
    pub fn board_delta(self) -> (i32, i32) {
        match self {
            Direction::Up => (0, 1),
            Direction::Right => (1, 0),
            Direction::Down => (0, -1),
            Direction::Left => (-1, 0),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Direction::Up => 'U',
            Direction::Right => 'R',
            Direction::Down => 'D',
            Direction::Left => 'L',
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl std::str::FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "U" | "u" => Ok(Direction::Up),
            "R" | "r" => Ok(Direction::Right),
            "D" | "d" => Ok(Direction::Down),
            "L" | "l" => Ok(Direction::Left),
            other => Err(format!("unknown direction {other:?}")),
        }
    }
}

/// One of the six faces of a box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Face {
    XNeg,
    XPos,
    YNeg,
    YPos,
    ZNeg,
    ZPos,
}

impl Face {
    const ALL: [Face; 6] = [
        Face::XNeg,
        Face::XPos,
        Face::YNeg,
        Face::YPos,
        Face::ZNeg,
        Face::ZPos,
    ];
}

pub type SquareId = usize;
pub type EdgeId = usize;

/// A unit square of the box surface together with its embedding data.
#[derive(Debug, Clone)]
pub struct SurfaceSquare {
    pub id: SquareId,
    pub face: Face,
    pub u: u32,
    pub v: u32,
    center2: V3,
    normal: V3,
    arrow: V3,
    /// Neighboring square across each local side (indexed like local sides,
    /// see [`BoxSurface::transfer`]).
    pub neighbors: [SquareId; 4],
    /// Edge bounding each local side.
    pub side_edges: [EdgeId; 4],
}

/// An edge of the box surface; borders exactly two square sides.
///
/// The local side is the direction label the side carries when the square is
/// placed with its chart arrow pointing up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceEdge {
    pub id: EdgeId,
    pub incidences: [(SquareId, Direction); 2],
}

/// A (surface square, direction) pair: the unit of placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flag {
    pub square: SquareId,
    pub dir: Direction,
}

impl Flag {
    pub fn new(square: SquareId, dir: Direction) -> Self {
        Self { square, dir }
    }

    /// Dense index in `0..4f`: lexicographic over (square id, direction).
    pub fn id(self) -> usize {
        self.square * 4 + self.dir.index()
    }

    pub fn from_id(id: usize) -> Self {
        Self {
            square: id / 4,
            dir: Direction::ALL[id % 4],
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.square, self.dir.as_char())
    }
}

#[derive(Clone, Copy)]
struct TransferStep {
    flag: u32,
    edge: u32,
}

/// The surface of a box: squares, edges, and the precomputed transfer table.
///
/// Immutable after construction; safe to share across threads.
pub struct BoxSurface {
    spec: BoxSpec,
    squares: Vec<SurfaceSquare>,
    edges: Vec<SurfaceEdge>,
    transfer_table: Vec<[TransferStep; 4]>,
}

impl BoxSurface {
    /// Builds the full surface model for `spec`.
    pub fn build(spec: BoxSpec) -> BoxSurface {
        let (a, b, c) = spec.dims();
        let (a2, b2, c2) = (2 * a as i32, 2 * b as i32, 2 * c as i32);

        // Square enumeration order is frozen: faces in `Face::ALL` order,
        // v-major then u within a face.
        let mut squares: Vec<SurfaceSquare> = Vec::with_capacity(spec.surface_area());
        let mut by_center: HashMap<V3, SquareId> = HashMap::new();
        for face in Face::ALL {
            let (umax, vmax, normal, arrow) = match face {
                Face::XNeg => (b, c, [-1, 0, 0], [0, 0, 1]),
                Face::XPos => (b, c, [1, 0, 0], [0, 0, 1]),
                Face::YNeg => (a, c, [0, -1, 0], [0, 0, 1]),
                Face::YPos => (a, c, [0, 1, 0], [0, 0, 1]),
                Face::ZNeg => (a, b, [0, 0, -1], [0, 1, 0]),
                Face::ZPos => (a, b, [0, 0, 1], [0, 1, 0]),
            };
            for v in 0..vmax {
                for u in 0..umax {
                    let (ui, vi) = (2 * u as i32 + 1, 2 * v as i32 + 1);
                    let center2 = match face {
                        Face::XNeg => [0, ui, vi],
                        Face::XPos => [a2, ui, vi],
                        Face::YNeg => [ui, 0, vi],
                        Face::YPos => [ui, b2, vi],
                        Face::ZNeg => [ui, vi, 0],
                        Face::ZPos => [ui, vi, c2],
                    };
                    let id = squares.len();
                    by_center.insert(center2, id);
                    squares.push(SurfaceSquare {
                        id,
                        face,
                        u,
                        v,
                        center2,
                        normal,
                        arrow,
                        neighbors: [0; 4],
                        side_edges: [0; 4],
                    });
                }
            }
        }
        debug_assert_eq!(squares.len(), spec.surface_area());

        // Edges: group the 4f square sides by crossed-edge midpoint.
        let mut edge_ids: HashMap<V3, EdgeId> = HashMap::new();
        let mut edges: Vec<SurfaceEdge> = Vec::new();
        let mut side_midpoints = vec![[[0i32; 3]; 4]; squares.len()];
        for sq in &squares {
            for (k, dir) in local_sides() {
                let t = cross_pow(sq.normal, sq.arrow, k);
                side_midpoints[sq.id][dir.index()] = add(sq.center2, t);
            }
        }
        let mut ordered: Vec<(V3, SquareId, Direction)> = Vec::with_capacity(4 * squares.len());
        for sq in &squares {
            for (_, dir) in local_sides() {
                ordered.push((side_midpoints[sq.id][dir.index()], sq.id, dir));
            }
        }
        ordered.sort();
        let mut i = 0;
        while i < ordered.len() {
            let (mid, s0, d0) = ordered[i];
            assert!(
                i + 1 < ordered.len() && ordered[i + 1].0 == mid,
                "surface edge at {mid:?} does not border exactly two square sides"
            );
            let (_, s1, d1) = ordered[i + 1];
            assert!(i + 2 >= ordered.len() || ordered[i + 2].0 != mid);
            let id = edges.len();
            edge_ids.insert(mid, id);
            edges.push(SurfaceEdge {
                id,
                incidences: [(s0, d0), (s1, d1)],
            });
            i += 2;
        }
        assert_eq!(edges.len(), 2 * squares.len());

        // Neighbor/edge tables and the flag transfer table.
        let mut transfer_table = vec![[TransferStep { flag: 0, edge: 0 }; 4]; 4 * squares.len()];
        let mut neighbor_fixups: Vec<(SquareId, usize, SquareId, EdgeId)> = Vec::new();
        for sq in &squares {
            for (k, side) in local_sides() {
                let t = cross_pow(sq.normal, sq.arrow, k);
                let mid = add(sq.center2, t);
                let edge = edge_ids[&mid];
                let flat = add(sq.center2, add(t, t));
                let (nb, nb_normal, folded_arrowish) = match by_center.get(&flat) {
                    // Same face: the placement frame carries over unchanged.
                    Some(&nb) => (nb, sq.normal, None),
                    // Box edge: rolling maps `t -> -n`, `-t -> n`, fixes the
                    // edge direction, and the new normal is `t`.
                    None => {
                        let around = add(sq.center2, sub(t, sq.normal));
                        let nb = *by_center
                            .get(&around)
                            .unwrap_or_else(|| panic!("no square across edge at {mid:?}"));
                        (nb, t, Some(t))
                    }
                };
                debug_assert_eq!(squares[nb].normal, nb_normal);
                neighbor_fixups.push((sq.id, side.index(), nb, edge));

                // Fill transfer for every flag of this square whose `mv`
                // lands on this local side: mv = ccw^k(dir).
                for dir in Direction::ALL {
                    let mv = {
                        let mut d = dir;
                        for _ in 0..k {
                            d = d.rotate_ccw();
                        }
                        d
                    };
                    let tangent_up = cross_pow(sq.normal, sq.arrow, dir.ccw_steps_to(Direction::Up));
                    let new_up = match folded_arrowish {
                        None => tangent_up,
                        Some(t) => {
                            if tangent_up == t {
                                neg(sq.normal)
                            } else if tangent_up == neg(t) {
                                sq.normal
                            } else {
                                tangent_up
                            }
                        }
                    };
                    let nb_sq = &squares[nb];
                    let new_dir = recover_dir(nb_sq.normal, nb_sq.arrow, new_up);
                    let from = Flag::new(sq.id, dir).id();
                    transfer_table[from][mv.index()] = TransferStep {
                        flag: Flag::new(nb, new_dir).id() as u32,
                        edge: edge as u32,
                    };
                }
            }
        }
        for (sq, side_idx, nb, edge) in neighbor_fixups {
            squares[sq].neighbors[side_idx] = nb;
            squares[sq].side_edges[side_idx] = edge;
        }

        BoxSurface {
            spec,
            squares,
            edges,
            transfer_table,
        }
    }

    pub fn spec(&self) -> BoxSpec {
        self.spec
    }

    pub fn square_count(&self) -> usize {
        self.squares.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn flag_count(&self) -> usize {
        4 * self.squares.len()
    }

    pub fn square(&self, id: SquareId) -> &SurfaceSquare {
        &self.squares[id]
    }

    pub fn squares(&self) -> &[SurfaceSquare] {
        &self.squares
    }

    pub fn edge(&self, id: EdgeId) -> &SurfaceEdge {
        &self.edges[id]
    }

    pub fn flags(&self) -> impl Iterator<Item = Flag> + '_ {
        (0..self.flag_count()).map(Flag::from_id)
    }

    /// True if the two squares bordering the edge lie on different faces,
    /// i.e. folding across it produces a crease.
    pub fn edge_separates_faces(&self, id: EdgeId) -> bool {
        let [(s0, _), (s1, _)] = self.edges[id].incidences;
        self.squares[s0].face != self.squares[s1].face
    }

    /// Rolls across the side of `flag`'s square that lies toward the board
    /// direction `mv`, returning the flag placed in the neighboring board
    /// cell and the crossed surface edge. Total and deterministic.
    pub fn transfer(&self, flag: Flag, mv: Direction) -> (Flag, EdgeId) {
        let step = self.transfer_table[flag.id()][mv.index()];
        (Flag::from_id(step.flag as usize), step.edge as usize)
    }

    /// Text dump of the incidence tables, one square per line.
    pub fn debug_listing(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "box {} squares {} edges {}", self.spec, self.square_count(), self.edge_count()).unwrap();
        for sq in &self.squares {
            writeln!(
                out,
                "square {:3} {:?} u {} v {} neighbors {:?} edges {:?}",
                sq.id, sq.face, sq.u, sq.v, sq.neighbors, sq.side_edges
            )
            .unwrap();
        }
        out
    }

    /// The orientation-preserving symmetries of the box as flag permutations.
    pub fn rotation_group(&self) -> RotationGroup {
        let (a, b, c) = self.spec.dims();
        let ctr = [a as i32, b as i32, c as i32];
        let mut perms: Vec<Vec<u32>> = Vec::new();
        for rot in rotation_matrices() {
            // The rotation must map the box onto itself: the permuted
            // half-extents have to match.
            let ext = [a as i32, b as i32, c as i32];
            let image = mat_apply_abs(&rot, ext);
            if image != ext {
                continue;
            }
            let mut perm = vec![0u32; self.flag_count()];
            for sq in &self.squares {
                let p = add(mat_apply(&rot, sub(sq.center2, ctr)), ctr);
                let nb = self
                    .squares
                    .iter()
                    .position(|s| s.center2 == p)
                    .expect("rotation image is a surface square");
                let nb_sq = &self.squares[nb];
                let n2 = mat_apply(&rot, sq.normal);
                debug_assert_eq!(n2, nb_sq.normal);
                for dir in Direction::ALL {
                    let tangent_up =
                        cross_pow(sq.normal, sq.arrow, dir.ccw_steps_to(Direction::Up));
                    let new_up = mat_apply(&rot, tangent_up);
                    let new_dir = recover_dir(nb_sq.normal, nb_sq.arrow, new_up);
                    perm[Flag::new(sq.id, dir).id()] = Flag::new(nb, new_dir).id() as u32;
                }
            }
            perms.push(perm);
        }
        perms.sort();
        perms.dedup();
        RotationGroup { perms }
    }
}

/// Local sides of a square: `k` counterclockwise quarter turns from the chart
/// arrow, labeled with the board direction they face under an arrow-up
/// placement.
fn local_sides() -> impl Iterator<Item = (u8, Direction)> {
    (0u8..4).map(|k| {
        let mut d = Direction::Up;
        for _ in 0..k {
            d = d.rotate_ccw();
        }
        (k, d)
    })
}

/// Finds the direction `r` such that a flag `(square, r)` maps board-up to
/// the tangent `up`.
fn recover_dir(normal: V3, arrow: V3, up: V3) -> Direction {
    for j in 0..4u8 {
        if cross_pow(normal, arrow, j) == up {
            // ccw_steps(r -> Up) == j, hence r = cw^j(Up).
            let mut d = Direction::Up;
            for _ in 0..j {
                d = d.rotate_cw();
            }
            return d;
        }
    }
    panic!("tangent {up:?} is not a quarter-turn image of {arrow:?} about {normal:?}");
}

type Mat3 = [[i32; 3]; 3];

fn mat_apply(m: &Mat3, v: V3) -> V3 {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

fn mat_apply_abs(m: &Mat3, v: V3) -> V3 {
    let w = mat_apply(m, v);
    [w[0].abs(), w[1].abs(), w[2].abs()]
}

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// The 24 rotation matrices of the cube group, generated by closure over the
/// three quarter-turn axis rotations.
fn rotation_matrices() -> Vec<Mat3> {
    let id: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let rx: Mat3 = [[1, 0, 0], [0, 0, -1], [0, 1, 0]];
    let ry: Mat3 = [[0, 0, 1], [0, 1, 0], [-1, 0, 0]];
    let rz: Mat3 = [[0, -1, 0], [1, 0, 0], [0, 0, 1]];
    let mut seen = vec![id];
    let mut frontier = vec![id];
    while let Some(m) = frontier.pop() {
        for g in [&rx, &ry, &rz] {
            let next = mat_mul(g, &m);
            if !seen.contains(&next) {
                seen.push(next);
                frontier.push(next);
            }
        }
    }
    assert_eq!(seen.len(), 24);
    seen.sort();
    seen
}

/// The rotation group of a box, acting on flags; element 0 is the identity.
pub struct RotationGroup {
    perms: Vec<Vec<u32>>,
}

impl RotationGroup {
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn apply(&self, elem: usize, flag: Flag) -> Flag {
        Flag::from_id(self.perms[elem][flag.id()] as usize)
    }

    pub fn is_identity(&self, elem: usize) -> bool {
        self.perms[elem].iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// All images of `flag`, including `flag` itself.
    pub fn orbit(&self, flag: Flag) -> Vec<Flag> {
        let mut out: Vec<Flag> = self.perms.iter().map(|p| Flag::from_id(p[flag.id()] as usize)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// The orbit member with the smallest flag id.
    pub fn canonical_flag(&self, flag: Flag) -> Flag {
        self.orbit(flag)[0]
    }

    pub fn same_orbit(&self, x: Flag, y: Flag) -> bool {
        self.perms.iter().any(|p| p[x.id()] as usize == y.id())
    }

    /// One representative per orbit, ordered by flag id.
    pub fn orbit_reps(&self, flag_count: usize) -> Vec<Flag> {
        let mut reps = Vec::new();
        let mut seen = vec![false; flag_count];
        for id in 0..flag_count {
            if seen[id] {
                continue;
            }
            let flag = Flag::from_id(id);
            reps.push(flag);
            for f in self.orbit(flag) {
                seen[f.id()] = true;
            }
        }
        reps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_sizes() {
        for ((a, b, c), squares, edges) in [
            ((1, 1, 1), 6, 12),
            ((1, 1, 2), 10, 20),
            ((1, 2, 4), 28, 56),
        ] {
            let s = BoxSurface::build(BoxSpec::new(a, b, c).unwrap());
            assert_eq!(s.square_count(), squares, "{a}x{b}x{c}");
            assert_eq!(s.edge_count(), edges, "{a}x{b}x{c}");
        }
    }

    #[test]
    fn spec_normalizes_order() {
        let s = BoxSpec::new(4, 1, 2).unwrap();
        assert_eq!(s.dims(), (1, 2, 4));
        assert!(BoxSpec::new(0, 1, 2).is_err());
    }

    #[test]
    fn transfer_inverse() {
        let s = BoxSurface::build(BoxSpec::new(1, 2, 3).unwrap());
        for flag in s.flags() {
            for mv in Direction::ALL {
                let (next, edge) = s.transfer(flag, mv);
                let (back, back_edge) = s.transfer(next, mv.opposite());
                assert_eq!(back, flag);
                assert_eq!(back_edge, edge);
            }
        }
    }

    #[test]
    fn cube_girth_cycle() {
        // Rolling the same way four times around a unit cube returns home.
        let s = BoxSurface::build(BoxSpec::new(1, 1, 1).unwrap());
        for flag in s.flags() {
            let mut cur = flag;
            for _ in 0..4 {
                cur = s.transfer(cur, Direction::Up).0;
            }
            assert_eq!(cur, flag);
        }
    }

    #[test]
    fn transfer_is_permutation() {
        let s = BoxSurface::build(BoxSpec::new(1, 2, 4).unwrap());
        for mv in Direction::ALL {
            let mut seen = vec![false; s.flag_count()];
            for flag in s.flags() {
                let (next, _) = s.transfer(flag, mv);
                assert!(!seen[next.id()]);
                seen[next.id()] = true;
            }
        }
    }

    #[test]
    fn rotation_group_orders() {
        for ((a, b, c), order) in [((1, 2, 4), 4), ((2, 2, 4), 8), ((1, 1, 1), 24)] {
            let s = BoxSurface::build(BoxSpec::new(a, b, c).unwrap());
            assert_eq!(s.rotation_group().order(), order, "{a}x{b}x{c}");
        }
    }

    #[test]
    fn rotation_group_commutes_with_transfer_and_acts_freely() {
        for spec in [BoxSpec::new(1, 1, 2).unwrap(), BoxSpec::new(1, 2, 3).unwrap()] {
            let s = BoxSurface::build(spec);
            let g = s.rotation_group();
            for elem in 0..g.order() {
                let mut moved_any = false;
                for flag in s.flags() {
                    for mv in Direction::ALL {
                        let a = g.apply(elem, s.transfer(flag, mv).0);
                        let b = s.transfer(g.apply(elem, flag), mv).0;
                        assert_eq!(a, b);
                    }
                    moved_any |= g.apply(elem, flag) != flag;
                }
                assert!(g.is_identity(elem) || moved_any);
            }
        }
    }

    #[test]
    fn flags_all_reachable() {
        let s = BoxSurface::build(BoxSpec::new(1, 1, 2).unwrap());
        let mut seen = vec![false; s.flag_count()];
        let mut stack = vec![Flag::new(0, Direction::Up)];
        seen[stack[0].id()] = true;
        while let Some(f) = stack.pop() {
            for mv in Direction::ALL {
                let (next, _) = s.transfer(f, mv);
                if !seen[next.id()] {
                    seen[next.id()] = true;
                    stack.push(next);
                }
            }
        }
        assert!(seen.iter().all(|&b| b));
    }
}
