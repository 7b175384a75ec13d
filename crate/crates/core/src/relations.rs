//! Relation loops in the move groupoid: involutivity, commutativity, the
//! triangle relation, and mining of short loops.
//!
//! A loop is a move sequence whose replay returns the base domain exactly
//! (labels and pairing). Loop mining enumerates all sequences without
//! immediate backtracking up to a length cap and classifies what it finds;
//! length-5 loops supported on two adjacent triangles are the pentagon-type
//! candidates.

use std::collections::BTreeSet;

use crate::domain::PolygonDomain;
use crate::error::{Error, Result};
use crate::moves::{
    apply_move_detailed, enumerate_moves, invert_move, move_support, Attach, CsMove, MoveOutcome,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopClass {
    Involutivity,
    Commutativity,
    Triangle,
    PentagonType,
    Unclassified,
}

impl LoopClass {
    pub fn name(&self) -> &'static str {
        match self {
            LoopClass::Involutivity => "involutivity",
            LoopClass::Commutativity => "commutativity",
            LoopClass::Triangle => "triangle",
            LoopClass::PentagonType => "pentagon-type",
            LoopClass::Unclassified => "unclassified",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RelationLoop {
    pub moves: Vec<CsMove>,
    pub class: LoopClass,
    /// Base positions of the sides cut along the loop (new diagonals have no
    /// base position and are not listed).
    pub support: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CensusCounts {
    pub involutivity: usize,
    pub commutativity: usize,
    pub triangle: usize,
    pub pentagon_type: usize,
    pub unclassified: usize,
}

#[derive(Debug, Clone)]
pub struct LoopCensus {
    pub base: PolygonDomain,
    pub max_len: usize,
    pub loops: Vec<RelationLoop>,
}

impl LoopCensus {
    pub fn counts(&self) -> CensusCounts {
        let mut c = CensusCounts::default();
        for l in &self.loops {
            match l.class {
                LoopClass::Involutivity => c.involutivity += 1,
                LoopClass::Commutativity => c.commutativity += 1,
                LoopClass::Triangle => c.triangle += 1,
                LoopClass::PentagonType => c.pentagon_type += 1,
                LoopClass::Unclassified => c.unclassified += 1,
            }
        }
        c
    }
}

/// Replay a move sequence; true exactly when it returns to the base domain.
pub fn check_loop(base: &PolygonDomain, moves: &[CsMove]) -> Result<bool> {
    let mut current = base.clone();
    for (k, &mv) in moves.iter().enumerate() {
        current = crate::moves::apply_move(&current, mv).map_err(|e| Error::InapplicableMove {
            applied: k,
            source: Box::new(e),
        })?;
    }
    Ok(current == *base)
}

/// The three-move loop that slides a triangle along both of its sides and
/// back: cut and attach along the first side's partner, follow the triangle
/// and attach along the second side's partner, then return it home.
pub fn triangle_relation(base: &PolygonDomain, index: usize) -> Result<Vec<CsMove>> {
    triangle_chain(base, index, Attach::First)
}

/// Triangle loop starting with either attach direction.
pub fn triangle_chain(
    base: &PolygonDomain,
    index: usize,
    attach: Attach,
) -> Result<Vec<CsMove>> {
    let m1 = CsMove { index, attach };
    let out1 = apply_move_detailed(base, m1)?;
    let m2 = CsMove {
        index: out1.inserted_run.0,
        attach,
    };
    let out2 = apply_move_detailed(&out1.domain, m2)?;
    let m3 = CsMove {
        index: out2.inserted_run.0,
        attach,
    };
    let out3 = apply_move_detailed(&out2.domain, m3)?;
    if out3.domain != *base {
        return Err(Error::InternalInvariantViolation(format!(
            "triangle chain from index {index} does not close"
        )));
    }
    Ok(vec![m1, m2, m3])
}

/// Do two moves with disjoint support commute? The second move's index is
/// carried across the first move's renumbering before comparing results.
pub fn commuting_pair(base: &PolygonDomain, m1: CsMove, m2: CsMove) -> Result<bool> {
    let s1 = move_support(base, m1)?;
    let s2 = move_support(base, m2)?;
    if s1.iter().any(|p| s2.contains(p)) {
        return Err(Error::OverlappingSupport(format!(
            "supports {s1:?} and {s2:?} intersect"
        )));
    }
    let out1 = apply_move_detailed(base, m1)?;
    let out2 = apply_move_detailed(base, m2)?;
    let m2_shifted = carry_move(&out1, m2)?;
    let m1_shifted = carry_move(&out2, m1)?;
    let a = crate::moves::apply_move(&out1.domain, m2_shifted)?;
    let b = crate::moves::apply_move(&out2.domain, m1_shifted)?;
    Ok(a == b)
}

/// Reindex a move across another move's renumbering. Fails if the other move
/// touched the triangle.
fn carry_move(outcome: &MoveOutcome, mv: CsMove) -> Result<CsMove> {
    let lo = outcome.position_map[mv.index];
    let hi = outcome.position_map[mv.index + 1];
    match (lo, hi) {
        (Some(a), Some(b)) if b == a + 1 => Ok(CsMove {
            index: a,
            attach: mv.attach,
        }),
        _ => Err(Error::OverlappingSupport(
            "the other move split this triangle".into(),
        )),
    }
}

fn loop_budget(genus: usize) -> usize {
    match genus {
        1 => 6,
        2 => 5,
        _ => 4,
    }
}

/// Enumerate every move sequence without immediate backtracking that returns
/// to the base within `max_len` moves, in order of length and then move
/// sequence. Each loop is classified.
pub fn find_loops(base: &PolygonDomain, max_len: usize) -> Result<LoopCensus> {
    let allowed = loop_budget(base.genus());
    if max_len > allowed {
        return Err(Error::SearchBudgetExceeded {
            requested: max_len,
            allowed,
            genus: base.genus(),
        });
    }

    struct Search<'a> {
        base: &'a PolygonDomain,
        max_len: usize,
        moves: Vec<CsMove>,
        cuts: Vec<usize>,
        found: Vec<(Vec<CsMove>, Vec<usize>)>,
    }

    fn explore(
        s: &mut Search<'_>,
        domain: &PolygonDomain,
        provenance: &[Option<usize>],
        forbidden: Option<CsMove>,
    ) -> Result<()> {
        if s.moves.len() == s.max_len {
            return Ok(());
        }
        for mv in enumerate_moves(domain) {
            // A backtracking move may close a loop (that is the involutivity
            // relation) but a path is never extended past one.
            let is_backtrack = Some(mv) == forbidden;
            let out = apply_move_detailed(domain, mv)?;
            let mut added_cuts = 0;
            for p in [mv.index, mv.index + 1] {
                if let Some(bp) = provenance[p] {
                    s.cuts.push(bp);
                    added_cuts += 1;
                }
            }
            s.moves.push(mv);
            if out.domain == *s.base {
                s.found.push((s.moves.clone(), s.cuts.clone()));
            }
            if !is_backtrack {
                let next_provenance = carry_provenance(provenance, &out, mv);
                let undo = CsMove {
                    index: out.inserted_run.0,
                    attach: mv.attach.opposite(),
                };
                explore(s, &out.domain, &next_provenance, Some(undo))?;
            }
            s.moves.pop();
            for _ in 0..added_cuts {
                s.cuts.pop();
            }
        }
        Ok(())
    }

    let n = base.side_count();
    let mut search = Search {
        base,
        max_len,
        moves: Vec::new(),
        cuts: Vec::new(),
        found: Vec::new(),
    };
    let identity_prov: Vec<Option<usize>> = (0..=n).map(Some).collect();
    explore(&mut search, base, &identity_prov, None)?;

    let mut found = search.found;
    found.sort_by_key(|(moves, _)| {
        (
            moves.len(),
            moves
                .iter()
                .map(|m| (m.index, matches!(m.attach, Attach::Second) as u8))
                .collect::<Vec<_>>(),
        )
    });

    let loops = found
        .into_iter()
        .map(|(moves, cuts)| {
            let support: Vec<usize> = BTreeSet::from_iter(cuts).into_iter().collect();
            let class = classify(base, &moves, &support)?;
            Ok(RelationLoop {
                moves,
                class,
                support,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(LoopCensus {
        base: base.clone(),
        max_len,
        loops,
    })
}

/// Carry base-position provenance across a move: the collapsed diagonal and
/// its reattached inverse are new sides; the survivor keeps its provenance.
fn carry_provenance(
    provenance: &[Option<usize>],
    out: &MoveOutcome,
    mv: CsMove,
) -> Vec<Option<usize>> {
    let n = provenance.len() - 1;
    let mut next: Vec<Option<usize>> = vec![None; n + 1];
    for old in 1..=n {
        if let Some(new) = out.position_map[old] {
            next[new] = provenance[old];
        }
    }
    let survivor_old = match mv.attach {
        Attach::First => mv.index + 1,
        Attach::Second => mv.index,
    };
    let survivor_new = match mv.attach {
        Attach::First => out.inserted_run.0,
        Attach::Second => out.inserted_run.1,
    };
    next[survivor_new] = provenance[survivor_old];
    next
}

fn classify(base: &PolygonDomain, moves: &[CsMove], support: &[usize]) -> Result<LoopClass> {
    match moves.len() {
        2 => {
            let undo = invert_move(base, moves[0])?;
            if moves[1] == undo {
                Ok(LoopClass::Involutivity)
            } else {
                Ok(LoopClass::Unclassified)
            }
        }
        3 => {
            if matches_triangle_chain(base, moves)? {
                Ok(LoopClass::Triangle)
            } else {
                Ok(LoopClass::Unclassified)
            }
        }
        4 => {
            if matches_commuting_square(base, moves)? {
                Ok(LoopClass::Commutativity)
            } else {
                Ok(LoopClass::Unclassified)
            }
        }
        5 => {
            // Supported on two adjacent triangles: the cut sides stem from at
            // most three consecutive base positions.
            let span_ok = match (support.first(), support.last()) {
                (Some(&lo), Some(&hi)) => hi - lo <= 2,
                _ => false,
            };
            if span_ok {
                Ok(LoopClass::PentagonType)
            } else {
                Ok(LoopClass::Unclassified)
            }
        }
        _ => Ok(LoopClass::Unclassified),
    }
}

fn matches_triangle_chain(base: &PolygonDomain, moves: &[CsMove]) -> Result<bool> {
    let attach = moves[0].attach;
    if moves.iter().any(|m| m.attach != attach) {
        return Ok(false);
    }
    let out1 = apply_move_detailed(base, moves[0])?;
    if moves[1].index != out1.inserted_run.0 {
        return Ok(false);
    }
    let out2 = apply_move_detailed(&out1.domain, moves[1])?;
    Ok(moves[2].index == out2.inserted_run.0)
}

fn matches_commuting_square(base: &PolygonDomain, moves: &[CsMove]) -> Result<bool> {
    let [m1, m2, m3, m4] = [moves[0], moves[1], moves[2], moves[3]];
    let out1 = apply_move_detailed(base, m1)?;
    // Pull m2 back to base coordinates; a commuting square never touches the
    // first move's new sides.
    let inv_map = invert_position_map(&out1.position_map, base.side_count());
    let (Some(back_lo), Some(back_hi)) = (inv_map[m2.index], inv_map[m2.index + 1]) else {
        return Ok(false);
    };
    if back_hi != back_lo + 1 {
        return Ok(false);
    }
    let m2_base = CsMove {
        index: back_lo,
        attach: m2.attach,
    };
    let s1 = move_support(base, m1)?;
    let s2 = move_support(base, m2_base)?;
    if s1.iter().any(|p| s2.contains(p)) {
        return Ok(false);
    }
    // The last two moves must undo the first two, in order.
    let undo1 = invert_move(base, m1)?;
    let out2 = apply_move_detailed(&out1.domain, m2)?;
    let Ok(undo1_carried) = carry_move(&out2, undo1) else {
        return Ok(false);
    };
    if m3 != undo1_carried {
        return Ok(false);
    }
    let undo2 = invert_move(&out1.domain, m2)?;
    let out3 = apply_move_detailed(&out2.domain, m3)?;
    let Ok(undo2_carried) = carry_move(&out3, undo2) else {
        return Ok(false);
    };
    Ok(m4 == undo2_carried)
}

fn invert_position_map(map: &[Option<usize>], n: usize) -> Vec<Option<usize>> {
    let mut inv: Vec<Option<usize>> = vec![None; n + 1];
    for old in 1..=n {
        if let Some(new) = map[old] {
            inv[new] = Some(old);
        }
    }
    inv
}
