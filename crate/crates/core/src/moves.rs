//! Triangle cut-slide moves.
//!
//! A move cuts the triangle spanned by two adjacent sides i, i+1 along their
//! diagonal d = c_i * c_{i+1} and reattaches it along the paired copy of one
//! of those sides. Attaching along the copy of c_i (`First`) collapses the
//! pair (i, i+1) to the single side d and replaces the side at partner(i) by
//! the two sides (c_{i+1}, d^-1); attaching along the copy of c_{i+1}
//! (`Second`) replaces the side at partner(i+1) by (d^-1, c_i). These are the
//! unique conventions for which the side product stays the inverse boundary
//! word: c_{i+1} * d^-1 = c_i^-1 and d^-1 * c_i = c_{i+1}^-1.
//!
//! Each move exchanges a single generating arc: the arc of the glued side is
//! no longer cut, and the diagonal becomes a new arc. That is an elementary
//! Nielsen substitution on the canonical generating set, recorded as a
//! [`NielsenStep`].

use std::fmt;
use std::str::FromStr;

use crate::domain::PolygonDomain;
use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Attach {
    First,
    Second,
}

impl Attach {
    pub fn opposite(&self) -> Attach {
        match self {
            Attach::First => Attach::Second,
            Attach::Second => Attach::First,
        }
    }
}

/// A triangle cut-slide move: the triangle spans sides `index`, `index + 1`
/// of the current domain, with `index` in 1..=4g-1. The boundary side never
/// takes part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CsMove {
    pub index: usize,
    pub attach: Attach,
}

impl CsMove {
    pub fn first(index: usize) -> CsMove {
        CsMove {
            index,
            attach: Attach::First,
        }
    }

    pub fn second(index: usize) -> CsMove {
        CsMove {
            index,
            attach: Attach::Second,
        }
    }
}

impl fmt::Display for CsMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let attach = match self.attach {
            Attach::First => "first",
            Attach::Second => "second",
        };
        write!(f, "cs({}, {})", self.index, attach)
    }
}

impl FromStr for CsMove {
    type Err = Error;

    fn from_str(s: &str) -> Result<CsMove> {
        let err = || Error::MalformedFile(format!("bad move `{s}`, expected `cs(i, first|second)`"));
        let body = s
            .trim()
            .strip_prefix("cs(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        let (index, attach) = body.split_once(',').ok_or_else(err)?;
        let index: usize = index.trim().parse().map_err(|_| err())?;
        let attach = match attach.trim() {
            "first" => Attach::First,
            "second" => Attach::Second,
            _ => return Err(err()),
        };
        Ok(CsMove { index, attach })
    }
}

/// Result of a move together with the position bookkeeping needed to follow
/// arcs across the renumbering.
#[derive(Debug, Clone)]
pub struct MoveOutcome {
    pub domain: PolygonDomain,
    /// Old 1-based positions of the removed arc's two copies.
    pub removed_positions: (usize, usize),
    /// Canonical label of the removed arc.
    pub removed_label: Word,
    /// The diagonal d = c_i * c_{i+1}.
    pub diagonal: Word,
    /// New 1-based position of the side labelled d.
    pub collapsed_pos: usize,
    /// New 1-based positions of the two inserted sides.
    pub inserted_run: (usize, usize),
    /// Old 1-based position -> new 1-based position for surviving sides.
    /// Index 0 is unused; entries for the three vanished slots are None.
    pub position_map: Vec<Option<usize>>,
    /// The induced substitution on the canonical generating set.
    pub nielsen: NielsenStep,
}

/// One factor of the diagonal product, as a canonical generator reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    /// 0-based index into the source domain's canonical generating set.
    pub index: usize,
    /// Whether the side label is the inverse of the canonical arc label.
    pub inverted: bool,
}

/// An elementary substitution on the canonical generating set: one generator
/// is removed, the diagonal (a product of two generators up to inversion)
/// takes its place, and the surviving factor may pick up an inversion when
/// its reattached copy lands past its partner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NielsenStep {
    /// 0-based canonical index of the removed arc in the source domain.
    pub removed_index: usize,
    pub removed_label: Word,
    /// 0-based canonical index of the added arc in the target domain.
    pub added_index: usize,
    /// Canonical label of the added arc.
    pub added_label: Word,
    /// The diagonal is factor_a * factor_b over the source generators.
    pub factor_a: Factor,
    pub factor_b: Factor,
    /// Whether the added canonical label is the inverse of the diagonal.
    pub flipped: bool,
    /// Source index of the surviving factor.
    pub survivor_index: usize,
    /// Index of the surviving factor in the target generating set. The
    /// reattached copy can land anywhere, so this is not derivable from the
    /// removed/added indices alone.
    pub survivor_target_index: usize,
    /// Whether the survivor's canonical orientation is reversed.
    pub survivor_flipped: bool,
}

impl NielsenStep {
    /// Rewrite a tuple of words for the source generators into the tuple for
    /// the target generators. Untouched generators keep their relative order;
    /// the diagonal and the survivor go to their recorded indices.
    pub fn apply_forward(&self, basis: &[Word]) -> Vec<Word> {
        let fa = factor_value(&basis[self.factor_a.index], self.factor_a.inverted);
        let fb = factor_value(&basis[self.factor_b.index], self.factor_b.inverted);
        let mut d = fa.multiply(&fb);
        if self.flipped {
            d = d.inverse();
        }
        let mut survivor = basis[self.survivor_index].clone();
        if self.survivor_flipped {
            survivor = survivor.inverse();
        }
        let mut slots: Vec<Option<Word>> = vec![None; basis.len()];
        slots[self.added_index] = Some(d);
        slots[self.survivor_target_index] = Some(survivor);
        let mut untouched = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != self.removed_index && *i != self.survivor_index)
            .map(|(_, w)| w.clone());
        slots
            .into_iter()
            .map(|slot| slot.unwrap_or_else(|| untouched.next().expect("tuple sizes match")))
            .collect()
    }

    /// Inverse rewrite: recover the source tuple from the target tuple.
    pub fn apply_backward(&self, basis: &[Word]) -> Vec<Word> {
        let mut d = basis[self.added_index].clone();
        if self.flipped {
            d = d.inverse();
        }
        let mut survivor_canonical = basis[self.survivor_target_index].clone();
        if self.survivor_flipped {
            survivor_canonical = survivor_canonical.inverse();
        }
        let survivor_factor = if self.removed_index == self.factor_a.index {
            self.factor_b
        } else {
            self.factor_a
        };
        let sv = factor_value(&survivor_canonical, survivor_factor.inverted);
        // d = fa * fb; solve for the removed factor.
        let removed_side = if self.removed_index == self.factor_a.index {
            d.multiply(&sv.inverse())
        } else {
            sv.inverse().multiply(&d)
        };
        let removed_factor = if self.removed_index == self.factor_a.index {
            self.factor_a
        } else {
            self.factor_b
        };
        let removed_value = factor_value(&removed_side, removed_factor.inverted);
        let mut slots: Vec<Option<Word>> = vec![None; basis.len()];
        slots[self.removed_index] = Some(removed_value);
        slots[self.survivor_index] = Some(survivor_canonical);
        let mut untouched = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != self.added_index && *i != self.survivor_target_index)
            .map(|(_, w)| w.clone());
        slots
            .into_iter()
            .map(|slot| slot.unwrap_or_else(|| untouched.next().expect("tuple sizes match")))
            .collect()
    }

    /// Human-readable substitution, e.g. `x1 -> x1 x2^-1`.
    pub fn describe(&self) -> String {
        let factor = |f: &Factor| {
            if f.inverted {
                format!("x{}^-1", f.index + 1)
            } else {
                format!("x{}", f.index + 1)
            }
        };
        let product = format!("{} {}", factor(&self.factor_a), factor(&self.factor_b));
        let mut text = if self.flipped {
            format!("x{} -> ({product})^-1", self.removed_index + 1)
        } else {
            format!("x{} -> {product}", self.removed_index + 1)
        };
        if self.survivor_flipped {
            let s = self.survivor_index + 1;
            text.push_str(&format!("; x{s} -> x{s}^-1"));
        }
        text
    }
}

fn factor_value(w: &Word, inverted: bool) -> Word {
    if inverted {
        w.inverse()
    } else {
        w.clone()
    }
}

/// All applicable moves: 2(4g-1) of them.
pub fn enumerate_moves(domain: &PolygonDomain) -> Vec<CsMove> {
    let n = domain.side_count();
    (1..n)
        .flat_map(|i| [CsMove::first(i), CsMove::second(i)])
        .collect()
}

pub fn apply_move(domain: &PolygonDomain, mv: CsMove) -> Result<PolygonDomain> {
    Ok(apply_move_detailed(domain, mv)?.domain)
}

pub fn apply_move_detailed(domain: &PolygonDomain, mv: CsMove) -> Result<MoveOutcome> {
    let n = domain.side_count();
    if mv.index == 0 || mv.index >= n {
        return Err(Error::InvalidMove {
            index: mv.index,
            max: n - 1,
        });
    }
    let i0 = mv.index - 1;
    let pairing = domain.pairing_internal();
    let u = domain.sides()[i0].clone();
    let v = domain.sides()[i0 + 1].clone();
    let d = u.multiply(&v);

    let (glued0, survivor0) = match mv.attach {
        Attach::First => (i0, i0 + 1),
        Attach::Second => (i0 + 1, i0),
    };
    let target0 = pairing[glued0];
    if target0 == i0 || target0 == i0 + 1 {
        return Err(Error::InternalInvariantViolation(format!(
            "side {} is paired with an adjacent side",
            glued0 + 1
        )));
    }
    let run_labels = match mv.attach {
        Attach::First => (v.clone(), d.inverse()),
        Attach::Second => (d.inverse(), u.clone()),
    };

    let mut new_sides: Vec<Word> = Vec::with_capacity(n);
    let mut position_map: Vec<Option<usize>> = vec![None; n + 1];
    let mut collapsed_pos = 0;
    let mut run = (0, 0);
    for o in 0..n {
        if o == i0 {
            collapsed_pos = new_sides.len() + 1;
            new_sides.push(d.clone());
        } else if o == i0 + 1 {
            // collapsed into the diagonal
        } else if o == target0 {
            run = (new_sides.len() + 1, new_sides.len() + 2);
            new_sides.push(run_labels.0.clone());
            new_sides.push(run_labels.1.clone());
        } else {
            position_map[o + 1] = Some(new_sides.len() + 1);
            new_sides.push(domain.sides()[o].clone());
        }
    }
    debug_assert_eq!(new_sides.len(), n);

    let dbar_pos = match mv.attach {
        Attach::First => run.1,
        Attach::Second => run.0,
    };
    let survivor_new = match mv.attach {
        Attach::First => run.0,
        Attach::Second => run.1,
    };
    let survivor_partner_old = pairing[survivor0];
    let survivor_partner_new = position_map[survivor_partner_old + 1].ok_or_else(|| {
        Error::InternalInvariantViolation("survivor partner vanished".into())
    })?;

    let mut new_pairing = vec![usize::MAX; n];
    new_pairing[collapsed_pos - 1] = dbar_pos - 1;
    new_pairing[dbar_pos - 1] = collapsed_pos - 1;
    new_pairing[survivor_new - 1] = survivor_partner_new - 1;
    new_pairing[survivor_partner_new - 1] = survivor_new - 1;
    for o in 0..n {
        if let Some(no) = position_map[o + 1] {
            if let Some(npo) = position_map[pairing[o] + 1] {
                new_pairing[no - 1] = npo - 1;
            }
        }
    }
    debug_assert!(new_pairing.iter().all(|&p| p != usize::MAX));

    let removed_positions = (glued0 + 1, target0 + 1);
    let removed_index = domain.arc_index_of_position(glued0 + 1);
    let removed_label = domain
        .side(removed_positions.0.min(removed_positions.1))
        .clone();

    let new_domain = PolygonDomain::from_parts(*domain.ctx(), new_sides, new_pairing);
    check_structure(&new_domain)?;

    let flipped = dbar_pos < collapsed_pos;
    let added_label = if flipped { d.inverse() } else { d.clone() };
    let added_index = new_domain.arc_index_of_position(collapsed_pos);
    let factor_at = |pos0: usize| Factor {
        index: domain.arc_index_of_position(pos0 + 1),
        inverted: pairing[pos0] < pos0,
    };
    // The survivor's reattached copy may land on the other side of its
    // partner, reversing the arc's canonical orientation.
    let survivor_was_canonical = survivor0 < survivor_partner_old;
    let survivor_is_canonical = survivor_new < survivor_partner_new;
    let nielsen = NielsenStep {
        removed_index,
        removed_label: removed_label.clone(),
        added_index,
        added_label,
        factor_a: factor_at(i0),
        factor_b: factor_at(i0 + 1),
        flipped,
        survivor_index: domain.arc_index_of_position(survivor0 + 1),
        survivor_target_index: new_domain.arc_index_of_position(survivor_new),
        survivor_flipped: survivor_was_canonical != survivor_is_canonical,
    };

    Ok(MoveOutcome {
        domain: new_domain,
        removed_positions,
        removed_label,
        diagonal: d,
        collapsed_pos,
        inserted_run: run,
        position_map,
        nielsen,
    })
}

/// Structural checks that every move result must satisfy. The full validation
/// (side product, determinant, vertex count) is exercised by the test suites.
fn check_structure(domain: &PolygonDomain) -> Result<()> {
    let n = domain.side_count();
    let pairing = domain.pairing_internal();
    for i in 0..n {
        let p = pairing[i];
        if p >= n || pairing[p] != i || p == i {
            return Err(Error::InternalInvariantViolation(format!(
                "pairing broken at position {}",
                i + 1
            )));
        }
        if p == i + 1 || i == p + 1 {
            return Err(Error::InternalInvariantViolation(format!(
                "adjacent pairing created at position {}",
                i + 1
            )));
        }
        if domain.sides()[i].is_identity() {
            return Err(Error::InternalInvariantViolation(format!(
                "identity label created at position {}",
                i + 1
            )));
        }
        if i < p && domain.sides()[p] != domain.sides()[i].inverse() {
            return Err(Error::InternalInvariantViolation(format!(
                "paired labels not inverse at position {}",
                i + 1
            )));
        }
    }
    Ok(())
}

/// The move undoing `mv`, expressed against `apply_move(domain, mv)`. The
/// inserted pair is the slid triangle; cutting it and gluing back along the
/// diagonal restores the original domain.
pub fn invert_move(domain: &PolygonDomain, mv: CsMove) -> Result<CsMove> {
    let outcome = apply_move_detailed(domain, mv)?;
    Ok(CsMove {
        index: outcome.inserted_run.0,
        attach: mv.attach.opposite(),
    })
}

/// The elementary substitution induced by a move.
pub fn induced_substitution(domain: &PolygonDomain, mv: CsMove) -> Result<NielsenStep> {
    Ok(apply_move_detailed(domain, mv)?.nielsen)
}

/// Positions involved in a move: the two cut sides and the glue target.
pub fn move_support(domain: &PolygonDomain, mv: CsMove) -> Result<[usize; 3]> {
    let n = domain.side_count();
    if mv.index == 0 || mv.index >= n {
        return Err(Error::InvalidMove {
            index: mv.index,
            max: n - 1,
        });
    }
    let glued = match mv.attach {
        Attach::First => mv.index,
        Attach::Second => mv.index + 1,
    };
    Ok([mv.index, mv.index + 1, domain.partner(glued)])
}

/// Cut the sub-polygon spanned by sides lo..=hi along its diagonal and
/// reattach it along the paired copy of c_lo (`First`) or c_hi (`Second`).
/// Returns the resulting domain together with a sequence of triangle moves
/// whose replay produces it.
pub fn general_cut_slide(
    domain: &PolygonDomain,
    lo: usize,
    hi: usize,
    attach: Attach,
) -> Result<(PolygonDomain, Vec<CsMove>)> {
    let n = domain.side_count();
    if lo == 0 || hi <= lo || hi > n {
        return Err(Error::InvalidSpan {
            lo,
            hi,
            reason: format!("need 1 <= lo < hi <= {n}"),
        });
    }
    let pairing = domain.pairing_internal();
    let glued0 = match attach {
        Attach::First => lo - 1,
        Attach::Second => hi - 1,
    };
    let target0 = pairing[glued0];
    if (lo - 1..hi).contains(&target0) {
        return Err(Error::InvalidSpan {
            lo,
            hi,
            reason: "the glued side is paired inside the span".into(),
        });
    }

    let direct = cut_slide_direct(domain, lo, hi, attach, target0);

    // Triangle decomposition, tracking positions across renumbering.
    let mut moves = Vec::with_capacity(hi - lo);
    let mut current = domain.clone();
    match attach {
        Attach::First => {
            let mut head = lo;
            for _ in 0..hi - lo {
                let mv = CsMove::first(head);
                let out = apply_move_detailed(&current, mv)?;
                head = out.collapsed_pos;
                current = out.domain;
                moves.push(mv);
            }
        }
        Attach::Second => {
            let mut span: Vec<usize> = (lo..hi).collect();
            let mut tail = hi;
            while let Some(k) = span.pop() {
                debug_assert_eq!(tail, k + 1);
                let mv = CsMove::second(k);
                let out = apply_move_detailed(&current, mv)?;
                tail = out.collapsed_pos;
                for p in span.iter_mut() {
                    *p = out.position_map[*p].ok_or_else(|| {
                        Error::InternalInvariantViolation("span side vanished".into())
                    })?;
                }
                current = out.domain;
                moves.push(mv);
            }
        }
    }

    if current != direct {
        return Err(Error::InternalInvariantViolation(
            "triangle decomposition disagrees with the direct cut-slide".into(),
        ));
    }
    Ok((direct, moves))
}

fn cut_slide_direct(
    domain: &PolygonDomain,
    lo: usize,
    hi: usize,
    attach: Attach,
    target0: usize,
) -> PolygonDomain {
    let n = domain.side_count();
    let pairing = domain.pairing_internal();
    let lo0 = lo - 1;
    let hi0 = hi - 1;
    let mut d = Word::identity();
    for o in lo0..=hi0 {
        d = d.multiply(&domain.sides()[o]);
    }

    // Detour read off the sub-polygon after the glued side.
    let run_labels: Vec<Word> = match attach {
        Attach::First => {
            let mut r: Vec<Word> = domain.sides()[lo0 + 1..=hi0].to_vec();
            r.push(d.inverse());
            r
        }
        Attach::Second => {
            let mut r = vec![d.inverse()];
            r.extend_from_slice(&domain.sides()[lo0..hi0]);
            r
        }
    };

    let mut new_sides: Vec<Word> = Vec::with_capacity(n);
    let mut outside_map: Vec<Option<usize>> = vec![None; n + 1];
    let mut collapsed_pos = 0;
    let mut run_start = 0;
    for o in 0..n {
        if o == lo0 {
            collapsed_pos = new_sides.len() + 1;
            new_sides.push(d.clone());
        } else if (lo0 + 1..=hi0).contains(&o) {
            // consumed by the diagonal
        } else if o == target0 {
            run_start = new_sides.len() + 1;
            new_sides.extend(run_labels.iter().cloned());
        } else {
            outside_map[o + 1] = Some(new_sides.len() + 1);
            new_sides.push(domain.sides()[o].clone());
        }
    }
    debug_assert_eq!(new_sides.len(), n);

    // Position map covering span copies carried into the detour.
    let map = |o0: usize| -> Option<usize> {
        match attach {
            Attach::First => {
                if (lo0 + 1..=hi0).contains(&o0) {
                    Some(run_start + (o0 - lo0 - 1))
                } else {
                    outside_map[o0 + 1]
                }
            }
            Attach::Second => {
                if (lo0..hi0).contains(&o0) {
                    Some(run_start + 1 + (o0 - lo0))
                } else {
                    outside_map[o0 + 1]
                }
            }
        }
    };
    let dbar_pos = match attach {
        Attach::First => run_start + (hi - lo),
        Attach::Second => run_start,
    };

    let mut new_pairing = vec![usize::MAX; n];
    new_pairing[collapsed_pos - 1] = dbar_pos - 1;
    new_pairing[dbar_pos - 1] = collapsed_pos - 1;
    for o in 0..n {
        if o == glued_of(attach, lo0, hi0) || o == target0 {
            continue;
        }
        if let (Some(no), Some(npo)) = (map(o), map(pairing[o])) {
            new_pairing[no - 1] = npo - 1;
        }
    }
    debug_assert!(new_pairing.iter().all(|&p| p != usize::MAX));

    PolygonDomain::from_parts(*domain.ctx(), new_sides, new_pairing)
}

fn glued_of(attach: Attach, lo0: usize, hi0: usize) -> usize {
    match attach {
        Attach::First => lo0,
        Attach::Second => hi0,
    }
}

/// A composable sequence of moves; each move is indexed against the domain
/// produced by its predecessors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsPath {
    pub base: PolygonDomain,
    pub moves: Vec<CsMove>,
}

impl CsPath {
    pub fn empty(base: PolygonDomain) -> CsPath {
        CsPath {
            base,
            moves: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn replay(&self) -> Result<PolygonDomain> {
        Ok(self.replay_domains()?.pop().unwrap())
    }

    /// All intermediate domains, starting with the base.
    pub fn replay_domains(&self) -> Result<Vec<PolygonDomain>> {
        let mut domains = Vec::with_capacity(self.moves.len() + 1);
        domains.push(self.base.clone());
        for (k, &mv) in self.moves.iter().enumerate() {
            let next = apply_move(domains.last().unwrap(), mv).map_err(|e| {
                Error::InapplicableMove {
                    applied: k,
                    source: Box::new(e),
                }
            })?;
            domains.push(next);
        }
        Ok(domains)
    }

    /// The reverse path, from the final domain back to the base.
    pub fn invert(&self) -> Result<CsPath> {
        let domains = self.replay_domains()?;
        let mut moves = Vec::with_capacity(self.moves.len());
        for (k, &mv) in self.moves.iter().enumerate().rev() {
            moves.push(invert_move(&domains[k], mv)?);
        }
        Ok(CsPath {
            base: domains.last().unwrap().clone(),
            moves,
        })
    }

    /// Concatenate with a path starting at this path's endpoint.
    pub fn join(&self, other: &CsPath) -> Result<CsPath> {
        if self.replay()? != other.base {
            return Err(Error::InternalInvariantViolation(
                "joined paths do not meet".into(),
            ));
        }
        let mut moves = self.moves.clone();
        moves.extend_from_slice(&other.moves);
        Ok(CsPath {
            base: self.base.clone(),
            moves,
        })
    }

    /// The substitution steps along the path.
    pub fn nielsen_steps(&self) -> Result<Vec<NielsenStep>> {
        let mut domain = self.base.clone();
        let mut steps = Vec::with_capacity(self.moves.len());
        for &mv in &self.moves {
            let out = apply_move_detailed(&domain, mv)?;
            steps.push(out.nielsen);
            domain = out.domain;
        }
        Ok(steps)
    }
}

/// Pull a tuple of words assigned to the final domain's generators back along
/// the steps to a tuple for the base domain's generators.
pub fn pull_back_tuple(steps: &[NielsenStep], final_tuple: &[Word]) -> Vec<Word> {
    let mut tuple = final_tuple.to_vec();
    for step in steps.iter().rev() {
        tuple = step.apply_backward(&tuple);
    }
    tuple
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{word, GenusContext};

    fn ctx(g: usize) -> GenusContext {
        GenusContext::new(g).unwrap()
    }

    fn standard(g: usize) -> PolygonDomain {
        PolygonDomain::standard(ctx(g))
    }

    fn side_texts(p: &PolygonDomain) -> Vec<String> {
        p.sides().iter().map(|w| w.to_text(p.ctx())).collect()
    }

    #[test]
    fn move_text_round_trip() {
        for mv in [CsMove::first(3), CsMove::second(11)] {
            assert_eq!(mv.to_string().parse::<CsMove>().unwrap(), mv);
        }
        assert!("cs(2, both)".parse::<CsMove>().is_err());
    }

    #[test]
    fn first_attach_on_standard_g1() {
        let p = standard(1);
        let out = apply_move_detailed(&p, CsMove::first(1)).unwrap();
        assert_eq!(side_texts(&out.domain), ["b1 a1", "a1", "A1 B1", "A1"]);
        assert_eq!(out.domain.partner(1), 3);
        assert_eq!(out.domain.partner(2), 4);
        assert_eq!(out.collapsed_pos, 1);
        assert_eq!(out.inserted_run, (2, 3));
        assert!(out.domain.validate().passed());
    }

    #[test]
    fn second_attach_example() {
        // d = a1 B1, glued along the partner of position 3; the detour
        // (b1 A1, a1) lands at position 1 and the product stays b1 a1 B1 A1.
        let p = standard(1);
        let out = apply_move_detailed(&p, CsMove::second(2)).unwrap();
        assert_eq!(side_texts(&out.domain), ["b1 A1", "a1", "a1 B1", "A1"]);
        assert_eq!(out.domain.partner(1), 3);
        assert_eq!(out.domain.partner(2), 4);
        assert!(out.domain.validate().passed());
    }

    #[test]
    fn first_attach_at_index_two() {
        let p = standard(1);
        let out = apply_move_detailed(&p, CsMove::first(2)).unwrap();
        assert_eq!(side_texts(&out.domain), ["b1", "a1 B1", "B1", "b1 A1"]);
        assert_eq!(out.domain.partner(2), 4);
        assert_eq!(out.domain.partner(1), 3);
        assert!(out.domain.validate().passed());
    }

    #[test]
    fn second_attach_undoes_the_twist() {
        let c = ctx(1);
        let p = PolygonDomain::new(
            c,
            vec![
                word("b1 a1", &c),
                word("a1", &c),
                word("A1 B1", &c),
                word("A1", &c),
            ],
            &[(1, 3), (2, 4)],
        )
        .unwrap();
        let q = apply_move(&p, CsMove::second(2)).unwrap();
        assert!(q.is_standard());
    }

    #[test]
    fn every_move_from_standard_validates() {
        for g in [1, 2] {
            let p = standard(g);
            let moves = enumerate_moves(&p);
            assert_eq!(moves.len(), 2 * (4 * g - 1));
            for mv in moves {
                let q = apply_move(&p, mv).unwrap();
                let report = q.validate();
                assert!(report.passed(), "genus {g} move {mv}: {report}");
            }
        }
    }

    #[test]
    fn length_change_matches_arc_exchange() {
        let p = standard(2);
        for mv in enumerate_moves(&p) {
            let out = apply_move_detailed(&p, mv).unwrap();
            let before = p.total_length() as i64;
            let after = out.domain.total_length() as i64;
            let expected = 2 * (out.diagonal.len() as i64 - out.removed_label.len() as i64);
            assert_eq!(after - before, expected, "move {mv}");
        }
    }

    #[test]
    fn invert_move_round_trips() {
        let p = standard(1);
        let inv = invert_move(&p, CsMove::first(1)).unwrap();
        assert_eq!(inv, CsMove::second(2));
        for g in [1, 2] {
            let p = standard(g);
            for mv in enumerate_moves(&p) {
                let q = apply_move(&p, mv).unwrap();
                let inv = invert_move(&p, mv).unwrap();
                let back = apply_move(&q, inv).unwrap();
                assert_eq!(back, p, "genus {g} move {mv} inverse {inv}");
            }
        }
    }

    #[test]
    fn inverse_move_is_unique_by_exhaustion() {
        // The closed-form inverse is the only move undoing the original.
        let p = standard(1);
        for mv in enumerate_moves(&p) {
            let q = apply_move(&p, mv).unwrap();
            let closed_form = invert_move(&p, mv).unwrap();
            let undoing: Vec<CsMove> = enumerate_moves(&q)
                .into_iter()
                .filter(|&m2| apply_move(&q, m2).unwrap() == p)
                .collect();
            assert_eq!(undoing, vec![closed_form], "move {mv}");
        }
    }

    #[test]
    fn substitution_for_first_move_is_right_multiplication() {
        let p = standard(1);
        let step = induced_substitution(&p, CsMove::first(1)).unwrap();
        assert_eq!(step.removed_index, 0);
        assert_eq!(step.added_index, 0);
        assert!(!step.flipped);
        assert_eq!(step.describe(), "x1 -> x1 x2");
        let c = ctx(1);
        assert_eq!(step.added_label, word("b1 a1", &c));
    }

    #[test]
    fn substitution_for_undoing_move_divides_out() {
        let c = ctx(1);
        let p = PolygonDomain::new(
            c,
            vec![
                word("b1 a1", &c),
                word("a1", &c),
                word("A1 B1", &c),
                word("A1", &c),
            ],
            &[(1, 3), (2, 4)],
        )
        .unwrap();
        let step = induced_substitution(&p, CsMove::second(2)).unwrap();
        assert_eq!(step.removed_index, 0);
        assert_eq!(step.removed_label, word("b1 a1", &c));
        assert_eq!(step.added_label, word("b1", &c));
        assert!(step.flipped);
        assert_eq!(step.describe(), "x1 -> (x2 x1^-1)^-1");
    }

    #[test]
    fn forward_and_backward_tuple_rewrites_invert_each_other() {
        let p = standard(2);
        let cg = p.cg_set().arcs;
        for mv in enumerate_moves(&p) {
            let out = apply_move_detailed(&p, mv).unwrap();
            let forward = out.nielsen.apply_forward(&cg);
            assert_eq!(forward, out.domain.cg_set().arcs, "move {mv}");
            let back = out.nielsen.apply_backward(&forward);
            assert_eq!(back, cg, "move {mv}");
        }
    }

    #[test]
    fn span_of_length_two_is_a_single_move() {
        let p = standard(1);
        let (q, moves) = general_cut_slide(&p, 1, 2, Attach::First).unwrap();
        assert_eq!(moves, vec![CsMove::first(1)]);
        assert_eq!(q, apply_move(&p, CsMove::first(1)).unwrap());
    }

    #[test]
    fn longer_span_decomposes_into_triangle_moves() {
        let p = standard(1);
        let (q, moves) = general_cut_slide(&p, 2, 3, Attach::First).unwrap();
        assert_eq!(moves.len(), 1);
        assert_eq!(
            CsPath {
                base: p.clone(),
                moves
            }
            .replay()
            .unwrap(),
            q
        );
        assert!(q.validate().passed());

        let p2 = standard(2);
        for (lo, hi, attach) in [
            (2, 5, Attach::Second),
            (3, 6, Attach::Second),
            (4, 7, Attach::First),
        ] {
            let (q, moves) = general_cut_slide(&p2, lo, hi, attach).unwrap();
            assert_eq!(moves.len(), hi - lo);
            let path = CsPath {
                base: p2.clone(),
                moves,
            };
            assert_eq!(path.replay().unwrap(), q, "span {lo}..={hi}");
            assert!(q.validate().passed(), "span {lo}..={hi}");
        }
    }

    #[test]
    fn cut_slide_rejects_bad_spans() {
        let p = standard(1);
        assert!(matches!(
            general_cut_slide(&p, 2, 2, Attach::First),
            Err(Error::InvalidSpan { .. })
        ));
        // Position 3 = partner(1) lies inside the span 1..=3: regluing would
        // attach the cut piece to itself.
        assert!(matches!(
            general_cut_slide(&p, 1, 3, Attach::First),
            Err(Error::InvalidSpan { .. })
        ));
        assert!(matches!(
            general_cut_slide(&p, 1, 4, Attach::First),
            Err(Error::InvalidSpan { .. })
        ));
    }

    #[test]
    fn path_replay_and_inverse() {
        let p = standard(2);
        let path = CsPath {
            base: p.clone(),
            moves: vec![CsMove::first(1), CsMove::second(3), CsMove::first(5)],
        };
        let end = path.replay().unwrap();
        let back = path.invert().unwrap();
        assert_eq!(back.base, end);
        assert_eq!(back.replay().unwrap(), p);
    }
}
