//! CNF encoding of "one polyomino on an n x n board folds into every
//! configured box".
//!
//! Per box the encoding uses three variable families: occupancy of each
//! board cell, placement of each surface square into a cell with one of four
//! directions, and a cut flag per surface edge. A shared family of
//! time-indexed ignition variables forces the occupied cells to form a
//! single edge-connected component.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cnf::{Clause, CnfFormula};
use crate::geometry::{BoxSpec, BoxSurface, Direction, Flag};

/// Board cell index: `y * n + x`, x rightward, y upward.
pub type CellId = usize;

/// Square board of side `n`; the anchor cell is the center `(n/2, n/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoardSpec {
    n: usize,
}

impl BoardSpec {
    pub fn new(n: usize) -> BoardSpec {
        assert!(n >= 1, "board side must be positive");
        BoardSpec { n }
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn cell_count(&self) -> usize {
        self.n * self.n
    }

    pub fn center(&self) -> CellId {
        (self.n / 2) * self.n + self.n / 2
    }

    pub fn xy(&self, cell: CellId) -> (i32, i32) {
        ((cell % self.n) as i32, (cell / self.n) as i32)
    }

    pub fn cell_at(&self, x: i32, y: i32) -> Option<CellId> {
        if x < 0 || y < 0 || x >= self.n as i32 || y >= self.n as i32 {
            None
        } else {
            Some(y as usize * self.n + x as usize)
        }
    }

    pub fn step(&self, cell: CellId, dir: Direction) -> Option<CellId> {
        let (x, y) = self.xy(cell);
        let (dx, dy) = dir.board_delta();
        self.cell_at(x + dx, y + dy)
    }

    pub fn manhattan_from_center(&self, cell: CellId) -> u32 {
        let (x, y) = self.xy(cell);
        let (cx, cy) = self.xy(self.center());
        (x.abs_diff(cx) + y.abs_diff(cy)) as u32
    }
}

/// At-most-one encoding used for cardinality groups larger than
/// [`PAIRWISE_MAX`] literals; smaller groups are always pairwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AmoEncoding {
    Pairwise,
    Sequential,
}

/// Groups up to this size use the quadratic pairwise at-most-one encoding
/// regardless of the configured scheme.
pub const PAIRWISE_MAX: usize = 30;

/// Where connectivity ignition starts.
///
/// `CenterFixed` hard-wires the ignition seed to the board center, which is
/// sound (and strictly stronger) whenever an anchor occupies the center.
/// `ExactlyOne` keeps the seed free: exactly one occupied cell ignites at
/// time zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IgnitionBase {
    CenterFixed,
    ExactlyOne,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EncodeConfig {
    /// One to three boxes; all must have the same surface area.
    pub boxes: Vec<BoxSpec>,
    pub board: BoardSpec,
    /// Pruning radius: cells farther than this (Manhattan) from the center
    /// carry no placement or ignition variables.
    pub max_distance: u32,
    /// Optional anchor per box: the given flag is asserted at the center.
    pub anchors: Vec<Option<Flag>>,
    pub amo: AmoEncoding,
    /// Emit the redundant clauses hinting neighbor-cell occupancy. They
    /// follow from adjacency plus channeling but help some solvers.
    pub occupancy_hints: bool,
    pub ignition_base: IgnitionBase,
    /// Keep a placement variable only when its (flag, cell) state is
    /// reachable from the box anchor within `max_distance` board moves.
    pub reachability_prune: bool,
}

impl EncodeConfig {
    pub fn new(boxes: Vec<BoxSpec>, board: BoardSpec, max_distance: u32) -> EncodeConfig {
        let anchors = vec![None; boxes.len()];
        EncodeConfig {
            boxes,
            board,
            max_distance,
            anchors,
            amo: AmoEncoding::Sequential,
            occupancy_hints: true,
            ignition_base: IgnitionBase::CenterFixed,
            reachability_prune: false,
        }
    }

    pub fn with_anchors(mut self, anchors: Vec<Option<Flag>>) -> EncodeConfig {
        self.anchors = anchors;
        self
    }
}

#[derive(Debug, Error)]
pub enum EncodeError {
    #[error("expected 1 to 3 boxes, got {0}")]
    BoxCount(usize),
    #[error("boxes must share one surface area: {0} vs {1}")]
    MismatchedAreas(usize, usize),
    #[error("surface area {area} exceeds board capacity {cells}")]
    AreaExceedsBoard { area: usize, cells: usize },
    #[error("anchor {flag} of box {box_idx} is not a valid flag (surface has {squares} squares)")]
    InvalidAnchor { box_idx: usize, flag: Flag, squares: usize },
    #[error(
        "anchors of boxes {box_a} and {box_b} are equivalent under the box rotation group; \
         the instance would admit two identical foldings"
    )]
    EquivalentAnchors { box_a: usize, box_b: usize },
    #[error("anchor count {0} does not match box count {1}")]
    AnchorCount(usize, usize),
}

/// Non-fatal conditions detected while encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EncodeWarning {
    /// The pruned mask holds fewer cells than the surface area; the instance
    /// is unsatisfiable by under-pruning even if a development exists.
    MaskSmallerThanArea { mask: usize, area: usize },
    /// Reachability pruning left a surface square with no placement at all.
    UnplaceableSquare { box_idx: usize, square: usize },
}

/// Bidirectional map between encoding variables and DIMACS indices.
///
/// Serializable as a JSON sidecar so decoding can run in a separate process.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VarMap {
    pub config: EncodeConfig,
    num_vars: usize,
    retained: Vec<CellId>,
    retained_mask: Vec<bool>,
    /// `[box][cell]` — present for every board cell.
    cell_vars: Vec<Vec<i32>>,
    /// `[box][(square * cells + cell) * 4 + dir]` — 0 marks a pruned entry.
    placement_vars: Vec<Vec<i32>>,
    /// `[box][edge]`.
    edge_vars: Vec<Vec<i32>>,
    /// `[time * cells + cell]` — 0 marks a pruned entry.
    ignite_vars: Vec<i32>,
}

/// What a DIMACS variable stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarKey {
    Cell { box_idx: usize, cell: CellId },
    Placement { box_idx: usize, square: usize, cell: CellId, dir: Direction },
    EdgeCut { box_idx: usize, edge: usize },
    Ignite { cell: CellId, time: u32 },
    CounterAux,
}

impl VarMap {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Cells carrying placement and ignition variables, in cell-id order.
    pub fn retained_cells(&self) -> &[CellId] {
        &self.retained
    }

    pub fn is_retained(&self, cell: CellId) -> bool {
        self.retained_mask[cell]
    }

    pub fn cell_var(&self, box_idx: usize, cell: CellId) -> i32 {
        self.cell_vars[box_idx][cell]
    }

    pub fn placement_var(&self, box_idx: usize, square: usize, cell: CellId, dir: Direction) -> Option<i32> {
        let cells = self.config.board.cell_count();
        let v = self.placement_vars[box_idx][(square * cells + cell) * 4 + dir.index()];
        (v != 0).then_some(v)
    }

    pub fn edge_var(&self, box_idx: usize, edge: usize) -> i32 {
        self.edge_vars[box_idx][edge]
    }

    pub fn ignite_var(&self, cell: CellId, time: u32) -> Option<i32> {
        let v = self.ignite_vars[time as usize * self.config.board.cell_count() + cell];
        (v != 0).then_some(v)
    }

    pub fn placement_count(&self, box_idx: usize) -> usize {
        self.placement_vars[box_idx].iter().filter(|&&v| v != 0).count()
    }

    /// Rebuilds the surface models for the configured boxes; square and edge
    /// ids are stable across runs.
    pub fn surfaces(&self) -> Vec<BoxSurface> {
        self.config.boxes.iter().map(|&b| BoxSurface::build(b)).collect()
    }

    /// Reverse table: meaning of every variable, indexed by `var - 1`.
    pub fn reverse_table(&self) -> Vec<VarKey> {
        let mut table = vec![VarKey::CounterAux; self.num_vars];
        let cells = self.config.board.cell_count();
        for (box_idx, vars) in self.cell_vars.iter().enumerate() {
            for (cell, &v) in vars.iter().enumerate() {
                table[v as usize - 1] = VarKey::Cell { box_idx, cell };
            }
        }
        for (box_idx, vars) in self.placement_vars.iter().enumerate() {
            for (idx, &v) in vars.iter().enumerate() {
                if v != 0 {
                    let dir = Direction::ALL[idx % 4];
                    let cell = (idx / 4) % cells;
                    let square = idx / 4 / cells;
                    table[v as usize - 1] = VarKey::Placement { box_idx, square, cell, dir };
                }
            }
        }
        for (box_idx, vars) in self.edge_vars.iter().enumerate() {
            for (edge, &v) in vars.iter().enumerate() {
                table[v as usize - 1] = VarKey::EdgeCut { box_idx, edge };
            }
        }
        for (idx, &v) in self.ignite_vars.iter().enumerate() {
            if v != 0 {
                table[v as usize - 1] = VarKey::Ignite {
                    cell: idx % cells,
                    time: (idx / cells) as u32,
                };
            }
        }
        table
    }

    /// Occupied cells of one box under a total assignment.
    pub fn occupied_cells(&self, box_idx: usize, assignment: &[bool]) -> BTreeSet<CellId> {
        self.cell_vars[box_idx]
            .iter()
            .enumerate()
            .filter(|(_, &v)| assignment[v as usize - 1])
            .map(|(cell, _)| cell)
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("varmap serializes")
    }

    pub fn from_json(text: &str) -> Result<VarMap, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Result of encoding: the formula, the variable map, and any warnings.
pub struct EncodeOutput {
    pub formula: CnfFormula,
    pub varmap: VarMap,
    pub warnings: Vec<EncodeWarning>,
}

/// Cells whose Manhattan distance from the board center is at most
/// `max_distance`, in cell-id order.
pub fn prune_mask(board: &BoardSpec, max_distance: u32) -> Vec<CellId> {
    (0..board.cell_count())
        .filter(|&c| board.manhattan_from_center(c) <= max_distance)
        .collect()
}

/// Builds the CNF instance for `cfg`.
pub fn encode(cfg: &EncodeConfig) -> Result<EncodeOutput, EncodeError> {
    let surfaces = validate(cfg)?;
    let mut warnings = Vec::new();

    let board = cfg.board;
    let cells = board.cell_count();
    let retained = prune_mask(&board, cfg.max_distance);
    let mut retained_mask = vec![false; cells];
    for &c in &retained {
        retained_mask[c] = true;
    }
    let area = surfaces[0].square_count();
    if retained.len() < area {
        warnings.push(EncodeWarning::MaskSmallerThanArea {
            mask: retained.len(),
            area,
        });
    }

    // Placement retention per box: all retained cells, or the states
    // reachable from the anchor within `max_distance` moves.
    let keep: Vec<Vec<bool>> = surfaces
        .iter()
        .enumerate()
        .map(|(k, surface)| match (cfg.reachability_prune, cfg.anchors[k]) {
            (true, Some(anchor)) => {
                reachable_placements(surface, &board, &retained_mask, anchor, cfg.max_distance)
            }
            _ => {
                let mut keep = vec![false; surface.flag_count() * cells];
                for flag in surface.flags() {
                    for &cell in &retained {
                        keep[flag.id() * cells + cell] = true;
                    }
                }
                keep
            }
        })
        .collect();

    // Variable layout: cell vars, then placements, then edge cuts, then
    // ignition, with counter auxiliaries appended during clause emission.
    let mut next_var: i32 = 1;
    let mut alloc = || {
        let v = next_var;
        next_var += 1;
        v
    };
    let cell_vars: Vec<Vec<i32>> = (0..cfg.boxes.len())
        .map(|_| (0..cells).map(|_| alloc()).collect())
        .collect();
    let mut placement_vars: Vec<Vec<i32>> = Vec::new();
    for (k, surface) in surfaces.iter().enumerate() {
        let mut vars = vec![0i32; surface.square_count() * cells * 4];
        for square in 0..surface.square_count() {
            for &cell in &retained {
                for dir in Direction::ALL {
                    let flag = Flag::new(square, dir);
                    if keep[k][flag.id() * cells + cell] {
                        vars[(square * cells + cell) * 4 + dir.index()] = alloc();
                    }
                }
            }
        }
        placement_vars.push(vars);
    }
    let edge_vars: Vec<Vec<i32>> = surfaces
        .iter()
        .map(|s| (0..s.edge_count()).map(|_| alloc()).collect())
        .collect();
    let mut ignite_vars = vec![0i32; (cfg.max_distance as usize + 1) * cells];
    for t in 0..=cfg.max_distance as usize {
        for &cell in &retained {
            ignite_vars[t * cells + cell] = alloc();
        }
    }

    let mut varmap = VarMap {
        config: cfg.clone(),
        num_vars: (next_var - 1) as usize,
        retained: retained.clone(),
        retained_mask,
        cell_vars,
        placement_vars,
        edge_vars,
        ignite_vars,
    };

    let mut formula = CnfFormula::new(varmap.num_vars);
    emit_clauses(cfg, &surfaces, &mut varmap, &mut formula, &mut warnings);
    Ok(EncodeOutput {
        formula,
        varmap,
        warnings,
    })
}

fn validate(cfg: &EncodeConfig) -> Result<Vec<BoxSurface>, EncodeError> {
    if cfg.boxes.is_empty() || cfg.boxes.len() > 3 {
        return Err(EncodeError::BoxCount(cfg.boxes.len()));
    }
    if cfg.anchors.len() != cfg.boxes.len() {
        return Err(EncodeError::AnchorCount(cfg.anchors.len(), cfg.boxes.len()));
    }
    let areas: Vec<usize> = cfg.boxes.iter().map(|b| b.surface_area()).collect();
    for &a in &areas[1..] {
        if a != areas[0] {
            return Err(EncodeError::MismatchedAreas(areas[0], a));
        }
    }
    if areas[0] > cfg.board.cell_count() {
        return Err(EncodeError::AreaExceedsBoard {
            area: areas[0],
            cells: cfg.board.cell_count(),
        });
    }
    let surfaces: Vec<BoxSurface> = cfg.boxes.iter().map(|&b| BoxSurface::build(b)).collect();
    for (k, anchor) in cfg.anchors.iter().enumerate() {
        if let Some(flag) = anchor {
            if flag.square >= surfaces[k].square_count() {
                return Err(EncodeError::InvalidAnchor {
                    box_idx: k,
                    flag: *flag,
                    squares: surfaces[k].square_count(),
                });
            }
        }
    }
    // A same-size pair anchored at rotation-equivalent flags would be
    // satisfied by two identical foldings; refuse it.
    for j in 0..cfg.boxes.len() {
        for k in j + 1..cfg.boxes.len() {
            if cfg.boxes[j] != cfg.boxes[k] {
                continue;
            }
            if let (Some(aj), Some(ak)) = (cfg.anchors[j], cfg.anchors[k]) {
                if surfaces[j].rotation_group().same_orbit(aj, ak) {
                    return Err(EncodeError::EquivalentAnchors { box_a: j, box_b: k });
                }
            }
        }
    }
    Ok(surfaces)
}

/// BFS over (flag, cell) states from the anchored center, limited to
/// `max_distance` steps and the retained mask.
fn reachable_placements(
    surface: &BoxSurface,
    board: &BoardSpec,
    retained_mask: &[bool],
    anchor: Flag,
    max_distance: u32,
) -> Vec<bool> {
    let cells = board.cell_count();
    let mut keep = vec![false; surface.flag_count() * cells];
    let start = anchor.id() * cells + board.center();
    keep[start] = true;
    let mut frontier = vec![(anchor, board.center())];
    for _ in 0..max_distance {
        let mut next = Vec::new();
        for (flag, cell) in frontier {
            for mv in Direction::ALL {
                let Some(cell2) = board.step(cell, mv) else { continue };
                if !retained_mask[cell2] {
                    continue;
                }
                let flag2 = surface.transfer(flag, mv).0;
                let state = flag2.id() * cells + cell2;
                if !keep[state] {
                    keep[state] = true;
                    next.push((flag2, cell2));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    keep
}

fn emit_clauses(
    cfg: &EncodeConfig,
    surfaces: &[BoxSurface],
    varmap: &mut VarMap,
    formula: &mut CnfFormula,
    warnings: &mut Vec<EncodeWarning>,
) {
    let board = cfg.board;
    let cells = board.cell_count();
    let retained = varmap.retained.clone();
    let d = cfg.max_distance;

    for (k, surface) in surfaces.iter().enumerate() {
        // Anchor placements.
        if let Some(anchor) = cfg.anchors[k] {
            let v = varmap
                .placement_var(k, anchor.square, board.center(), anchor.dir)
                .expect("anchor placement variable exists");
            formula.push_unit(v);
        }

        // Rolling propagation, cut separation, and boundary clauses.
        for square in 0..surface.square_count() {
            for &cell in &retained {
                for dir in Direction::ALL {
                    let Some(p) = varmap.placement_var(k, square, cell, dir) else {
                        continue;
                    };
                    let flag = Flag::new(square, dir);
                    for mv in Direction::ALL {
                        let (next_flag, edge) = surface.transfer(flag, mv);
                        let e = varmap.edge_var(k, edge);
                        let target = board.step(cell, mv);
                        let next_p = target.and_then(|c| {
                            varmap.placement_var(k, next_flag.square, c, next_flag.dir)
                        });
                        match next_p {
                            Some(p2) => {
                                // Uncut edge: the neighbor square follows.
                                formula.push(vec![-p, e, p2]);
                                if cfg.occupancy_hints {
                                    formula.push(vec![-p, e, varmap.cell_var(k, target.unwrap())]);
                                }
                            }
                            None => {
                                // Off the board or pruned: the edge must be cut.
                                formula.push(vec![-p, e]);
                            }
                        }
                        // Cut edge: the adjacent cell stays empty.
                        if let Some(c2) = target {
                            if varmap.is_retained(c2) {
                                formula.push(vec![-p, -e, -varmap.cell_var(k, c2)]);
                            }
                        }
                    }
                }
            }
        }

        // Each surface square is placed exactly once.
        for square in 0..surface.square_count() {
            let lits: Vec<i32> = retained
                .iter()
                .flat_map(|&cell| {
                    Direction::ALL
                        .iter()
                        .filter_map(move |&dir| varmap.placement_var(k, square, cell, dir))
                })
                .collect();
            if lits.is_empty() {
                warnings.push(EncodeWarning::UnplaceableSquare { box_idx: k, square });
                // Unsatisfiable by construction; make it explicit.
                let v = varmap.cell_var(k, board.center());
                formula.push_unit(v);
                formula.push_unit(-v);
                continue;
            }
            formula.push(lits.clone());
            emit_amo(formula, varmap, &lits, cfg.amo);
        }

        // Each cell hosts at most one placement, and the cell variable
        // channels the disjunction of its placements.
        for &cell in &retained {
            let lits: Vec<i32> = (0..surface.square_count())
                .flat_map(|square| {
                    Direction::ALL
                        .iter()
                        .filter_map(move |&dir| varmap.placement_var(k, square, cell, dir))
                })
                .collect();
            let c = varmap.cell_var(k, cell);
            emit_amo(formula, varmap, &lits, cfg.amo);
            if lits.is_empty() {
                formula.push_unit(-c);
                continue;
            }
            for &p in &lits {
                formula.push(vec![-p, c]);
            }
            let mut clause = Vec::with_capacity(lits.len() + 1);
            clause.push(-c);
            clause.extend(&lits);
            formula.push(clause);
        }

        // Cells outside the mask are unoccupied.
        for cell in 0..cells {
            if !varmap.is_retained(cell) {
                formula.push_unit(-varmap.cell_var(k, cell));
            }
        }
    }

    // Connectivity by ignition, over box 0's occupancy.
    let ig = |varmap: &VarMap, cell: CellId, t: u32| varmap.ignite_var(cell, t).unwrap();
    match cfg.ignition_base {
        IgnitionBase::CenterFixed => {
            let center = board.center();
            formula.push_unit(ig(varmap, center, 0));
            for &cell in &retained {
                if cell != center {
                    formula.push_unit(-ig(varmap, cell, 0));
                }
            }
            formula.push(vec![-ig(varmap, center, 0), varmap.cell_var(0, center)]);
        }
        IgnitionBase::ExactlyOne => {
            let lits: Vec<i32> = retained.iter().map(|&c| ig(varmap, c, 0)).collect();
            for &cell in &retained {
                formula.push(vec![-ig(varmap, cell, 0), varmap.cell_var(0, cell)]);
            }
            formula.push(lits.clone());
            emit_amo(formula, varmap, &lits, cfg.amo);
        }
    }
    for t in 1..=d {
        for &cell in &retained {
            let c = varmap.cell_var(0, cell);
            let here = ig(varmap, cell, t);
            // Neighborhood includes the cell itself, so ignition is monotone.
            let mut sources = vec![cell];
            for mv in Direction::ALL {
                if let Some(nb) = board.step(cell, mv) {
                    if varmap.is_retained(nb) {
                        sources.push(nb);
                    }
                }
            }
            formula.push(vec![-here, c]);
            let mut fire = Vec::with_capacity(sources.len() + 1);
            fire.push(-here);
            fire.extend(sources.iter().map(|&s| ig(varmap, s, t - 1)));
            formula.push(fire);
            for &s in &sources {
                formula.push(vec![-c, -ig(varmap, s, t - 1), here]);
            }
        }
    }
    // Every occupied cell must be ignited by the deadline.
    for &cell in &retained {
        formula.push(vec![-varmap.cell_var(0, cell), ig(varmap, cell, d)]);
    }

    // All boxes occupy the same cells.
    for k in 1..cfg.boxes.len() {
        for &cell in &retained {
            let c0 = varmap.cell_var(0, cell);
            let ck = varmap.cell_var(k, cell);
            formula.push(vec![-c0, ck]);
            formula.push(vec![-ck, c0]);
        }
    }
}

/// At-most-one over `lits`: pairwise for small groups, otherwise the
/// configured scheme (sequential counter by default).
fn emit_amo(formula: &mut CnfFormula, varmap: &mut VarMap, lits: &[i32], amo: AmoEncoding) {
    if lits.len() <= 1 {
        return;
    }
    if lits.len() <= PAIRWISE_MAX || amo == AmoEncoding::Pairwise {
        for i in 0..lits.len() {
            for j in i + 1..lits.len() {
                formula.push(vec![-lits[i], -lits[j]]);
            }
        }
        return;
    }
    // Sequential counter: s_i tracks "some of lits[..=i] is true".
    let n = lits.len();
    let mut regs = Vec::with_capacity(n - 1);
    for _ in 0..n - 1 {
        varmap.num_vars += 1;
        formula.ensure_var(varmap.num_vars);
        regs.push(varmap.num_vars as i32);
    }
    formula.push(vec![-lits[0], regs[0]]);
    for i in 1..n - 1 {
        formula.push(vec![-lits[i], regs[i]]);
        formula.push(vec![-regs[i - 1], regs[i]]);
        formula.push(vec![-lits[i], -regs[i - 1]]);
    }
    formula.push(vec![-lits[n - 1], -regs[n - 2]]);
}

/// The clause falsified exactly by assignments whose box-0 occupancy over
/// the retained mask reproduces `occupied`.
pub fn blocking_clause(varmap: &VarMap, occupied: &BTreeSet<CellId>) -> Clause {
    debug_assert!(occupied.iter().all(|&c| varmap.is_retained(c)));
    varmap
        .retained
        .iter()
        .map(|&cell| {
            let v = varmap.cell_var(0, cell);
            if occupied.contains(&cell) {
                -v
            } else {
                v
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a: u32, b: u32, c: u32) -> BoxSpec {
        BoxSpec::new(a, b, c).unwrap()
    }

    #[test]
    fn prune_mask_sizes() {
        let b15 = BoardSpec::new(15);
        assert_eq!(prune_mask(&b15, 15).len(), 225);
        assert_eq!(prune_mask(&b15, 2).len(), 13);
        let b1 = BoardSpec::new(1);
        assert_eq!(prune_mask(&b1, 0).len(), 1);
    }

    #[test]
    fn placement_variable_count_unpruned() {
        // Area 22 on a 15x15 board with the full mask.
        let cfg = EncodeConfig::new(vec![spec(1, 1, 5)], BoardSpec::new(15), 15);
        let out = encode(&cfg).unwrap();
        assert_eq!(out.varmap.placement_count(0), 4 * 225 * 22);
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn header_counts_match_formula() {
        let cfg = EncodeConfig::new(vec![spec(1, 1, 1)], BoardSpec::new(5), 4);
        let out = encode(&cfg).unwrap();
        let text = out.formula.to_dimacs_string();
        let header = crate::cnf::parse_dimacs_header(&text).unwrap();
        assert_eq!(header.num_vars, out.formula.num_vars());
        assert_eq!(header.num_clauses, out.formula.num_clauses());
        assert_eq!(out.varmap.num_vars(), out.formula.num_vars());
    }

    #[test]
    fn encoding_is_deterministic() {
        let mut cfg = EncodeConfig::new(vec![spec(1, 1, 2), spec(1, 1, 2)], BoardSpec::new(8), 8);
        cfg.anchors = vec![
            Some(Flag::new(0, Direction::Up)),
            Some(Flag::new(1, Direction::Up)),
        ];
        let a = encode(&cfg).unwrap().formula.to_dimacs_string();
        let b = encode(&cfg).unwrap().formula.to_dimacs_string();
        assert_eq!(a, b);
    }

    #[test]
    fn equivalent_anchors_refused() {
        let surface = BoxSurface::build(spec(1, 2, 4));
        let group = surface.rotation_group();
        let anchor = Flag::new(0, Direction::Up);
        let equivalent = group.apply(1, anchor);
        assert_ne!(anchor, equivalent);
        let mut cfg = EncodeConfig::new(vec![spec(1, 2, 4), spec(1, 2, 4)], BoardSpec::new(15), 15);
        cfg.anchors = vec![Some(anchor), Some(equivalent)];
        match encode(&cfg) {
            Err(EncodeError::EquivalentAnchors { box_a: 0, box_b: 1 }) => {}
            other => panic!("expected equivalent-anchor refusal, got {other:?}"),
        }
        // Distinct orbits are accepted.
        let mut ok = false;
        for square in 0..surface.square_count() {
            let candidate = Flag::new(square, Direction::Up);
            if !group.same_orbit(anchor, candidate) {
                cfg.anchors = vec![Some(anchor), Some(candidate)];
                assert!(encode(&cfg).is_ok());
                ok = true;
                break;
            }
        }
        assert!(ok);
    }

    #[test]
    fn mismatched_areas_refused() {
        let cfg = EncodeConfig::new(vec![spec(1, 1, 1), spec(1, 1, 2)], BoardSpec::new(8), 8);
        assert!(matches!(encode(&cfg), Err(EncodeError::MismatchedAreas(6, 10))));
    }

    #[test]
    fn oversized_surface_refused() {
        let cfg = EncodeConfig::new(vec![spec(1, 2, 4)], BoardSpec::new(5), 5);
        assert!(matches!(encode(&cfg), Err(EncodeError::AreaExceedsBoard { .. })));
    }

    #[test]
    fn under_pruning_warns() {
        let cfg = EncodeConfig::new(vec![spec(1, 1, 1)], BoardSpec::new(5), 1);
        let out = encode(&cfg).unwrap();
        assert!(out
            .warnings
            .contains(&EncodeWarning::MaskSmallerThanArea { mask: 5, area: 6 }));
    }

    #[test]
    fn blocking_clause_literals() {
        let cfg = EncodeConfig::new(vec![spec(1, 1, 1)], BoardSpec::new(3), 8);
        let out = encode(&cfg).unwrap();
        let occupied = BTreeSet::from([0usize, 4]);
        let clause = blocking_clause(&out.varmap, &occupied);
        assert_eq!(clause.len(), 9);
        for (idx, &cell) in out.varmap.retained_cells().iter().enumerate() {
            let v = out.varmap.cell_var(0, cell);
            assert_eq!(clause[idx], if occupied.contains(&cell) { -v } else { v });
        }
        // Empty occupancy blocks the all-empty assignment: all positive.
        let clause = blocking_clause(&out.varmap, &BTreeSet::new());
        assert!(clause.iter().all(|&l| l > 0));
    }

    #[test]
    fn varmap_json_round_trip() {
        let mut cfg = EncodeConfig::new(vec![spec(1, 1, 2)], BoardSpec::new(5), 5);
        cfg.anchors = vec![Some(Flag::new(3, Direction::Left))];
        let out = encode(&cfg).unwrap();
        let json = out.varmap.to_json();
        let back = VarMap::from_json(&json).unwrap();
        assert_eq!(back.num_vars(), out.varmap.num_vars());
        assert_eq!(back.retained_cells(), out.varmap.retained_cells());
        assert_eq!(back.cell_var(0, 7), out.varmap.cell_var(0, 7));
        assert_eq!(
            back.placement_var(0, 3, 12, Direction::Left),
            out.varmap.placement_var(0, 3, 12, Direction::Left)
        );
    }

    #[test]
    fn reverse_table_is_consistent() {
        let cfg = EncodeConfig::new(vec![spec(1, 1, 1)], BoardSpec::new(3), 4);
        let out = encode(&cfg).unwrap();
        let table = out.varmap.reverse_table();
        assert_eq!(table.len(), out.varmap.num_vars());
        let v = out.varmap.cell_var(0, 5);
        assert_eq!(table[v as usize - 1], VarKey::Cell { box_idx: 0, cell: 5 });
        let p = out.varmap.placement_var(0, 2, 4, Direction::Down).unwrap();
        assert_eq!(
            table[p as usize - 1],
            VarKey::Placement { box_idx: 0, square: 2, cell: 4, dir: Direction::Down }
        );
    }
}
