//! One-vertex triangulations of the surface as combinatorial maps.
//!
//! A triangulation has 6g-1 arcs (2g generating arcs, 4g-2 diagonals, one
//! boundary arc) and 4g-1 triangular faces. Faces are ordered triples of
//! directed arcs read clockwise, and the three labels around every face
//! multiply to the identity. Every directed arc except the reversed boundary
//! lies in exactly one face.
//!
//! The corner structure at the single vertex is recovered by the walk
//! succ(d) = next-in-face(reverse(d)), which lists all outgoing directions in
//! clockwise order, starting behind the boundary and ending on it. Arc order
//! and the locality test below are phrased against this walk.

use std::collections::HashMap;

use crate::domain::PolygonDomain;
use crate::error::{Error, Result};
use crate::moves::{general_cut_slide, Attach, CsMove, CsPath};
use crate::reduction::connect;
use crate::word::{GenusContext, Word};

pub type ArcId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    Fwd,
    Bwd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DirectedArc {
    pub arc: ArcId,
    pub dir: Dir,
}

impl DirectedArc {
    pub fn fwd(arc: ArcId) -> DirectedArc {
        DirectedArc { arc, dir: Dir::Fwd }
    }

    pub fn bwd(arc: ArcId) -> DirectedArc {
        DirectedArc { arc, dir: Dir::Bwd }
    }

    pub fn reversed(self) -> DirectedArc {
        DirectedArc {
            arc: self.arc,
            dir: match self.dir {
                Dir::Fwd => Dir::Bwd,
                Dir::Bwd => Dir::Fwd,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcRecord {
    pub label: Word,
    pub is_boundary: bool,
}

#[derive(Debug, Clone)]
pub struct Triangulation {
    ctx: GenusContext,
    arcs: Vec<ArcRecord>,
    faces: Vec<[DirectedArc; 3]>,
    boundary: ArcId,
}

impl Triangulation {
    pub fn new(
        ctx: GenusContext,
        arcs: Vec<ArcRecord>,
        faces: Vec<[DirectedArc; 3]>,
    ) -> Result<Triangulation> {
        let boundary = arcs
            .iter()
            .position(|a| a.is_boundary)
            .ok_or_else(|| Error::MalformedTriangulation("no boundary arc".into()))?;
        let t = Triangulation {
            ctx,
            arcs,
            faces,
            boundary,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn ctx(&self) -> &GenusContext {
        &self.ctx
    }

    pub fn arcs(&self) -> &[ArcRecord] {
        &self.arcs
    }

    pub fn faces(&self) -> &[[DirectedArc; 3]] {
        &self.faces
    }

    pub fn boundary_arc(&self) -> ArcId {
        self.boundary
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn label(&self, d: DirectedArc) -> Word {
        match d.dir {
            Dir::Fwd => self.arcs[d.arc].label.clone(),
            Dir::Bwd => self.arcs[d.arc].label.inverse(),
        }
    }

    /// Face and slot containing each directed arc. The reversed boundary is
    /// absent: its face would lie outside the surface.
    fn slot_table(&self) -> Result<HashMap<DirectedArc, (usize, usize)>> {
        let mut table = HashMap::with_capacity(3 * self.faces.len());
        for (f, face) in self.faces.iter().enumerate() {
            for (s, &d) in face.iter().enumerate() {
                if table.insert(d, (f, s)).is_some() {
                    return Err(Error::MalformedTriangulation(format!(
                        "directed arc {d:?} appears in two faces"
                    )));
                }
            }
        }
        Ok(table)
    }

    pub fn validate(&self) -> Result<()> {
        let g = self.ctx.genus();
        if self.arcs.len() != 6 * g - 1 {
            return Err(Error::MalformedTriangulation(format!(
                "expected {} arcs, got {}",
                6 * g - 1,
                self.arcs.len()
            )));
        }
        if self.faces.len() != 4 * g - 1 {
            return Err(Error::MalformedTriangulation(format!(
                "expected {} faces, got {}",
                4 * g - 1,
                self.faces.len()
            )));
        }
        if self
            .arcs
            .iter()
            .enumerate()
            .any(|(i, a)| a.is_boundary != (i == self.boundary))
        {
            return Err(Error::MalformedTriangulation(
                "exactly one boundary arc is required".into(),
            ));
        }
        for (i, arc) in self.arcs.iter().enumerate() {
            if arc.label.is_identity() {
                return Err(Error::MalformedTriangulation(format!(
                    "arc {i} carries the identity label"
                )));
            }
        }
        let table = self.slot_table()?;
        if table.len() != 2 * self.arcs.len() - 1 {
            return Err(Error::MalformedTriangulation(
                "every directed arc except the reversed boundary must lie in one face".into(),
            ));
        }
        if table.contains_key(&DirectedArc::bwd(self.boundary)) {
            return Err(Error::MalformedTriangulation(
                "the reversed boundary may not border a face".into(),
            ));
        }
        for (f, face) in self.faces.iter().enumerate() {
            let product = self
                .label(face[0])
                .multiply(&self.label(face[1]))
                .multiply(&self.label(face[2]));
            if !product.is_identity() {
                return Err(Error::MalformedTriangulation(format!(
                    "face {f} labels do not multiply to the identity"
                )));
            }
        }
        // The corner walk must be one chain over all 12g-2 directions.
        let order = self.end_order_with(&table)?;
        if order.len() != 2 * self.arcs.len() {
            return Err(Error::MalformedTriangulation(format!(
                "corner walk visits {} of {} directions",
                order.len(),
                2 * self.arcs.len()
            )));
        }
        Ok(())
    }

    /// Outgoing directions at the vertex in clockwise order. The walk starts
    /// behind the boundary (its reversed direction) and ends on the boundary.
    pub fn end_order(&self) -> Result<Vec<DirectedArc>> {
        let table = self.slot_table()?;
        self.end_order_with(&table)
    }

    fn end_order_with(
        &self,
        table: &HashMap<DirectedArc, (usize, usize)>,
    ) -> Result<Vec<DirectedArc>> {
        let mut order = Vec::with_capacity(2 * self.arcs.len());
        let mut current = DirectedArc::bwd(self.boundary);
        loop {
            order.push(current);
            if order.len() > 2 * self.arcs.len() {
                return Err(Error::MalformedTriangulation(
                    "corner walk does not close".into(),
                ));
            }
            let Some(&(f, s)) = table.get(&current.reversed()) else {
                break; // reached the outgoing boundary direction
            };
            current = self.faces[f][(s + 1) % 3];
        }
        Ok(order)
    }

    /// Arcs ordered by the position of their first outgoing direction in the
    /// clockwise order; the boundary always comes first.
    pub fn first_occurrence_order(&self) -> Result<Vec<ArcId>> {
        let order = self.end_order()?;
        let mut seen = vec![false; self.arcs.len()];
        let mut arcs = Vec::with_capacity(self.arcs.len());
        for d in order {
            if !seen[d.arc] {
                seen[d.arc] = true;
                arcs.push(d.arc);
            }
        }
        Ok(arcs)
    }

    /// Identity-invariant encoding: arcs renumbered by first occurrence and
    /// oriented along it, faces canonically rotated and sorted.
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        let order = self.end_order()?;
        let mut number: Vec<Option<(usize, Dir)>> = vec![None; self.arcs.len()];
        let mut labels = Vec::new();
        for d in &order {
            if number[d.arc].is_none() {
                number[d.arc] = Some((labels.len(), d.dir));
                labels.push(self.label(*d));
            }
        }
        let encode = |d: &DirectedArc| {
            let (n, canonical_dir) = number[d.arc].unwrap();
            (n, d.dir != canonical_dir)
        };
        let mut faces: Vec<[(usize, bool); 3]> = self
            .faces
            .iter()
            .map(|face| {
                let raw = [encode(&face[0]), encode(&face[1]), encode(&face[2])];
                let start = (0..3).min_by_key(|&k| raw[k]).unwrap();
                [raw[start], raw[(start + 1) % 3], raw[(start + 2) % 3]]
            })
            .collect();
        faces.sort_unstable();
        Ok(CanonicalForm {
            genus: self.ctx.genus(),
            labels,
            faces,
        })
    }
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx
            && match (self.canonical_form(), other.canonical_form()) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            }
    }
}

impl Eq for Triangulation {}

/// Canonical encoding used for triangulation equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    genus: usize,
    labels: Vec<Word>,
    faces: Vec<[(usize, bool); 3]>,
}

/// Triangulate a polygon domain by diagonals from the corner between the
/// boundary and the first side. The k-th diagonal carries c_1 * ... * c_k.
pub fn fan_triangulate(domain: &PolygonDomain) -> Result<Triangulation> {
    let report = domain.validate();
    if !report.passed() {
        return Err(Error::Validation(report));
    }
    let ctx = *domain.ctx();
    let g = ctx.genus();
    let n = 4 * g;

    let cg = domain.cg_set();
    let mut arcs: Vec<ArcRecord> = cg
        .arcs
        .iter()
        .map(|label| ArcRecord {
            label: label.clone(),
            is_boundary: false,
        })
        .collect();
    let boundary_id = arcs.len();
    arcs.push(ArcRecord {
        label: ctx.boundary(),
        is_boundary: true,
    });

    // Directed side p as a reference to its pair arc.
    let side_dir = |p: usize| -> DirectedArc {
        let arc = domain.arc_index_of_position(p);
        if p < domain.partner(p) {
            DirectedArc::fwd(arc)
        } else {
            DirectedArc::bwd(arc)
        }
    };

    let mut diagonal_ids = HashMap::new();
    let mut acc = Word::identity();
    for k in 1..=n - 1 {
        acc = acc.multiply(domain.side(k));
        if k >= 2 {
            diagonal_ids.insert(k, arcs.len());
            arcs.push(ArcRecord {
                label: acc.clone(),
                is_boundary: false,
            });
        }
    }

    let diag = |k: usize| DirectedArc::fwd(diagonal_ids[&k]);
    let mut faces = Vec::with_capacity(n - 1);
    faces.push([side_dir(1), side_dir(2), diag(2).reversed()]);
    for k in 2..=n - 2 {
        faces.push([diag(k), side_dir(k + 1), diag(k + 1).reversed()]);
    }
    faces.push([diag(n - 1), side_dir(n), DirectedArc::fwd(boundary_id)]);

    Triangulation::new(ctx, arcs, faces)
}

/// Result of the greedy inverse, with the removal bookkeeping.
#[derive(Debug, Clone)]
pub struct GreedyOutcome {
    pub domain: PolygonDomain,
    pub removed: Vec<ArcId>,
    pub kept: Vec<ArcId>,
}

/// Undo a triangulation: walk the arcs in first-occurrence order and remove
/// each one whose two sides currently border distinct faces, merging the
/// faces. Exactly 4g-2 arcs fall and the rest bound a single polygon, read
/// off clockwise from the boundary.
pub fn greedy_extract(t: &Triangulation) -> Result<PolygonDomain> {
    Ok(greedy_extract_detailed(t)?.domain)
}

pub fn greedy_extract_detailed(t: &Triangulation) -> Result<GreedyOutcome> {
    t.validate()?;
    let table = t.slot_table()?;
    let arc_order = t.first_occurrence_order()?;

    // Union-find over faces plus one explicit boundary cycle per root.
    let mut parent: Vec<usize> = (0..t.face_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut cycles: Vec<Option<Vec<DirectedArc>>> =
        t.faces().iter().map(|f| Some(f.to_vec())).collect();

    let mut removed = Vec::new();
    let mut kept = Vec::new();
    for arc in arc_order {
        if arc == t.boundary_arc() {
            continue;
        }
        let (f1, _) = table[&DirectedArc::fwd(arc)];
        let (f2, _) = table[&DirectedArc::bwd(arc)];
        let r1 = find(&mut parent, f1);
        let r2 = find(&mut parent, f2);
        if r1 == r2 {
            kept.push(arc);
            continue;
        }
        // Splice the two boundary cycles along the arc.
        let c1 = cycles[r1].take().unwrap();
        let c2 = cycles[r2].take().unwrap();
        let merged = splice(c1, c2, arc)?;
        parent[r1] = r2;
        cycles[r2] = Some(merged);
        removed.push(arc);
    }

    let expected_removed = 4 * t.ctx().genus() - 2;
    if removed.len() != expected_removed {
        return Err(Error::MalformedTriangulation(format!(
            "greedy removed {} arcs, expected {expected_removed}",
            removed.len()
        )));
    }

    let root = find(&mut parent, 0);
    let cycle = cycles[root].take().ok_or_else(|| {
        Error::MalformedTriangulation("final polygon cycle missing".into())
    })?;
    let n = 4 * t.ctx().genus();
    if cycle.len() != n + 1 {
        return Err(Error::MalformedTriangulation(format!(
            "final polygon has {} sides, expected {}",
            cycle.len(),
            n + 1
        )));
    }

    // Rotate so the boundary side comes first, then read off positions 1..4g.
    let start = cycle
        .iter()
        .position(|d| *d == DirectedArc::fwd(t.boundary_arc()))
        .ok_or_else(|| {
            Error::MalformedTriangulation("boundary side missing from the final polygon".into())
        })?;
    let mut sides = Vec::with_capacity(n);
    let mut arcs_at = Vec::with_capacity(n);
    for k in 1..=n {
        let d = cycle[(start + k) % cycle.len()];
        sides.push(t.label(d));
        arcs_at.push(d.arc);
    }
    let mut pairing = vec![usize::MAX; n];
    for i in 0..n {
        for j in i + 1..n {
            if arcs_at[i] == arcs_at[j] {
                pairing[i] = j;
                pairing[j] = i;
            }
        }
    }
    if pairing.contains(&usize::MAX) {
        return Err(Error::MalformedTriangulation(
            "kept arcs do not pair up around the polygon".into(),
        ));
    }

    let domain = PolygonDomain::from_parts(*t.ctx(), sides, pairing);
    let report = domain.validate();
    if !report.passed() {
        return Err(Error::MalformedTriangulation(format!(
            "greedy polygon fails validation: {report}"
        )));
    }
    Ok(GreedyOutcome {
        domain,
        removed,
        kept,
    })
}

/// Glue two clockwise cycles along an arc present forwards in one and
/// backwards in the other.
fn splice(c1: Vec<DirectedArc>, c2: Vec<DirectedArc>, arc: ArcId) -> Result<Vec<DirectedArc>> {
    let rotate_after = |cycle: Vec<DirectedArc>, d: DirectedArc| -> Result<Vec<DirectedArc>> {
        let k = cycle
            .iter()
            .position(|x| *x == d)
            .ok_or_else(|| Error::MalformedTriangulation("splice arc not on cycle".into()))?;
        let mut out = Vec::with_capacity(cycle.len() - 1);
        out.extend_from_slice(&cycle[k + 1..]);
        out.extend_from_slice(&cycle[..k]);
        Ok(out)
    };
    let (with_fwd, with_bwd) = if c1.contains(&DirectedArc::fwd(arc)) {
        (c1, c2)
    } else {
        (c2, c1)
    };
    let mut merged = rotate_after(with_fwd, DirectedArc::fwd(arc))?;
    merged.extend(rotate_after(with_bwd, DirectedArc::bwd(arc))?);
    Ok(merged)
}

/// Local test for whether the greedy algorithm removes an arc: take the
/// triangle right of its first occurrence and the sector of that triangle
/// opposite the arc; the arc falls exactly when the sector comes later in the
/// clockwise order.
pub fn locality_removed(t: &Triangulation, arc: ArcId) -> Result<bool> {
    if arc >= t.arc_count() {
        return Err(Error::MalformedTriangulation(format!("no arc {arc}")));
    }
    if arc == t.boundary_arc() {
        return Err(Error::Usage(
            "the boundary arc never takes part in the greedy removal".into(),
        ));
    }
    let order = t.end_order()?;
    let table = t.slot_table()?;
    let position: HashMap<DirectedArc, usize> =
        order.iter().enumerate().map(|(i, d)| (*d, i)).collect();

    let first_dir = *order
        .iter()
        .find(|d| d.arc == arc)
        .expect("arc occurs in the walk");
    let first_pos = position[&first_dir];
    // Triangle right of the first occurrence.
    let (f, s) = table[&first_dir.reversed()];
    let face = t.faces()[f];
    // Sector opposite the arc lies between the other two sides (x, y); as a
    // corner it sits immediately before the outgoing direction of y.
    let y = face[(s + 2) % 3];
    Ok(position[&y] > first_pos)
}

/// Replace an arc by the opposite diagonal of the quadrilateral formed by its
/// two adjacent triangles. Involutive up to arc orientation.
pub fn diagonal_exchange(t: &Triangulation, arc: ArcId) -> Result<Triangulation> {
    if arc >= t.arc_count() {
        return Err(Error::NotFlippable {
            arc,
            reason: "no such arc".into(),
        });
    }
    if arc == t.boundary_arc() {
        return Err(Error::NotFlippable {
            arc,
            reason: "the boundary arc is not exchangeable".into(),
        });
    }
    let table = t.slot_table()?;
    let (f1, s1) = table[&DirectedArc::fwd(arc)];
    let (f2, s2) = table[&DirectedArc::bwd(arc)];
    if f1 == f2 {
        return Err(Error::NotFlippable {
            arc,
            reason: "both sides border the same triangle".into(),
        });
    }
    // f1 = (arc, s, t_), f2 = (arc^-1, u, v) after rotation; the union
    // quadrilateral is (s, t_, u, v) and the opposite diagonal e satisfies
    // label(e) = label(t_played) * label(u).
    let face1 = t.faces()[f1];
    let face2 = t.faces()[f2];
    let s = face1[(s1 + 1) % 3];
    let t_ = face1[(s1 + 2) % 3];
    let u = face2[(s2 + 1) % 3];
    let v = face2[(s2 + 2) % 3];

    let new_label = t.label(t_).multiply(&t.label(u));
    if new_label.is_identity() {
        return Err(Error::InternalInvariantViolation(
            "diagonal exchange produced the identity label".into(),
        ));
    }
    let mut arcs = t.arcs().to_vec();
    arcs[arc].label = new_label;
    let mut faces = t.faces().to_vec();
    faces[f1] = [t_, u, DirectedArc::bwd(arc)];
    faces[f2] = [v, s, DirectedArc::fwd(arc)];
    let out = Triangulation {
        ctx: *t.ctx(),
        arcs,
        faces,
        boundary: t.boundary_arc(),
    };
    out.validate()?;
    Ok(out)
}

/// A sequence of diagonal exchanges applied to a base triangulation.
#[derive(Debug, Clone)]
pub struct FlipPath {
    pub base: Triangulation,
    pub flips: Vec<ArcId>,
}

impl FlipPath {
    pub fn replay(&self) -> Result<Triangulation> {
        Ok(self.replay_all()?.pop().unwrap())
    }

    /// All intermediate triangulations, starting with the base.
    pub fn replay_all(&self) -> Result<Vec<Triangulation>> {
        let mut out = vec![self.base.clone()];
        for (k, &arc) in self.flips.iter().enumerate() {
            let next = diagonal_exchange(out.last().unwrap(), arc).map_err(|e| {
                Error::InapplicableMove {
                    applied: k,
                    source: Box::new(e),
                }
            })?;
            out.push(next);
        }
        Ok(out)
    }
}

/// The alternating five-exchange loop on two arcs sharing one triangle.
pub fn pentagon_loop(t: &Triangulation, arc1: ArcId, arc2: ArcId) -> Result<FlipPath> {
    let not_pentagon = |reason: &str| Error::NotPentagonConfiguration {
        arc1,
        arc2,
        reason: reason.into(),
    };
    if arc1 == arc2 {
        return Err(not_pentagon("arcs must be distinct"));
    }
    for arc in [arc1, arc2] {
        if arc >= t.arc_count() || arc == t.boundary_arc() {
            return Err(not_pentagon("arcs must be interior arcs"));
        }
    }
    let table = t.slot_table()?;
    let faces_of = |arc: ArcId| -> Result<(usize, usize)> {
        let (f1, _) = table[&DirectedArc::fwd(arc)];
        let (f2, _) = table[&DirectedArc::bwd(arc)];
        if f1 == f2 {
            return Err(not_pentagon("an arc borders one triangle twice"));
        }
        Ok((f1, f2))
    };
    let (a1, a2) = faces_of(arc1)?;
    let (b1, b2) = faces_of(arc2)?;
    let shared: Vec<usize> = [a1, a2]
        .into_iter()
        .filter(|f| *f == b1 || *f == b2)
        .collect();
    if shared.len() != 1 {
        return Err(not_pentagon("arcs must share exactly one triangle"));
    }
    let other1 = if a1 == shared[0] { a2 } else { a1 };
    let other2 = if b1 == shared[0] { b2 } else { b1 };
    if other1 == other2 {
        return Err(not_pentagon("outer triangles coincide"));
    }

    let flips = vec![arc1, arc2, arc1, arc2, arc1];
    let path = FlipPath {
        base: t.clone(),
        flips,
    };
    let end = path.replay()?;
    if end != *t {
        return Err(Error::InternalInvariantViolation(
            "pentagon sequence does not close".into(),
        ));
    }
    Ok(path)
}

/// Translate a flip path into cut-slide moves between the greedy polygons of
/// its stages. Stages whose polygons differ by one arc are realized by a
/// single general cut-slide when one matches, and through the reduction
/// connector otherwise.
pub fn flips_to_cs(path: &FlipPath) -> Result<CsPath> {
    let stages = path.replay_all()?;
    let polygons: Vec<PolygonDomain> = stages
        .iter()
        .map(greedy_extract)
        .collect::<Result<Vec<_>>>()?;

    let base = polygons[0].clone();
    let mut current = base.clone();
    let mut moves: Vec<CsMove> = Vec::new();
    for next in polygons.iter().skip(1) {
        if current == *next {
            continue;
        }
        let differing = arc_set_difference(&current, next);
        if differing > 1 {
            return Err(Error::MultiArcDiscrepancy {
                before: Box::new(current.clone()),
                after: Box::new(next.clone()),
                differing,
            });
        }
        let segment = match single_cut_slide_between(&current, next)? {
            Some(ms) => ms,
            None => connect(&current, next)?.moves,
        };
        moves.extend_from_slice(&segment);
        current = next.clone();
    }

    let out = CsPath { base, moves };
    if out.replay()? != *polygons.last().unwrap() {
        return Err(Error::InternalInvariantViolation(
            "translated path misses the final polygon".into(),
        ));
    }
    Ok(out)
}

/// Number of arcs of `a` (as undirected labels) not present in `b`.
fn arc_set_difference(a: &PolygonDomain, b: &PolygonDomain) -> usize {
    let of = |p: &PolygonDomain| -> Vec<Word> {
        let mut v: Vec<Word> = p.cg_set().arcs.iter().map(Word::undirected).collect();
        v.sort_by(|x, y| x.energy_cmp(y));
        v
    };
    let xs = of(a);
    let ys = of(b);
    xs.iter().filter(|x| !ys.contains(x)).count()
}

/// Search for one general cut-slide carrying `from` to `to`.
fn single_cut_slide_between(
    from: &PolygonDomain,
    to: &PolygonDomain,
) -> Result<Option<Vec<CsMove>>> {
    let n = from.side_count();
    for lo in 1..n {
        for hi in lo + 1..=n {
            for attach in [Attach::First, Attach::Second] {
                match general_cut_slide(from, lo, hi, attach) {
                    Ok((domain, moves)) if domain == *to => return Ok(Some(moves)),
                    Ok(_) => {}
                    Err(Error::InvalidSpan { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::random_walk;
    use crate::word::word;

    fn ctx(g: usize) -> GenusContext {
        GenusContext::new(g).unwrap()
    }

    fn fan_standard(g: usize) -> Triangulation {
        fan_triangulate(&PolygonDomain::standard(ctx(g))).unwrap()
    }

    #[test]
    fn fan_of_standard_g1_matches_hand_computation() {
        let c = ctx(1);
        let t = fan_standard(1);
        assert_eq!(t.arc_count(), 5);
        assert_eq!(t.face_count(), 3);
        let labels: Vec<String> = t.arcs().iter().map(|a| a.label.to_text(&c)).collect();
        assert_eq!(labels, ["b1", "a1", "a1 b1 A1 B1", "b1 a1", "b1 a1 B1"]);
        assert_eq!(t.boundary_arc(), 2);
    }

    #[test]
    fn fan_counts_for_small_genus() {
        for g in 1..=3 {
            let t = fan_standard(g);
            assert_eq!(t.arc_count(), 6 * g - 1);
            assert_eq!(t.face_count(), 4 * g - 1);
            t.validate().unwrap();
        }
    }

    #[test]
    fn corner_walk_of_standard_fan() {
        let t = fan_standard(1);
        let order = t.end_order().unwrap();
        // (beta, alpha, boundary, diag2, diag3) carry ids (0, 1, 2, 3, 4).
        let expected = [
            DirectedArc::bwd(2),
            DirectedArc::fwd(4),
            DirectedArc::fwd(3),
            DirectedArc::fwd(0),
            DirectedArc::bwd(4),
            DirectedArc::bwd(1),
            DirectedArc::bwd(3),
            DirectedArc::bwd(0),
            DirectedArc::fwd(1),
            DirectedArc::fwd(2),
        ];
        assert_eq!(order, expected);
        assert_eq!(t.first_occurrence_order().unwrap(), vec![2, 4, 3, 0, 1]);
    }

    #[test]
    fn greedy_inverts_the_fan_on_the_standard_domain() {
        for g in 1..=2 {
            let p = PolygonDomain::standard(ctx(g));
            let out = greedy_extract_detailed(&fan_triangulate(&p).unwrap()).unwrap();
            assert_eq!(out.domain, p, "genus {g}");
            assert_eq!(out.removed.len(), 4 * g - 2);
            assert_eq!(out.kept.len(), 2 * g);
        }
    }

    #[test]
    fn greedy_removal_set_at_g1() {
        let out = greedy_extract_detailed(&fan_standard(1)).unwrap();
        // The diagonals fall (deepest first); the generating arcs stay.
        assert_eq!(out.removed, vec![4, 3]);
        assert_eq!(out.kept, vec![0, 1]);
    }

    #[test]
    fn greedy_roundtrip_on_random_domains() {
        for g in [1usize, 2] {
            let base = PolygonDomain::standard(ctx(g));
            for seed in 0..10u64 {
                let (p, _) = random_walk(&base, 15, seed).unwrap();
                let t = fan_triangulate(&p).unwrap();
                assert_eq!(greedy_extract(&t).unwrap(), p, "g={g} seed={seed}");
            }
        }
    }

    #[test]
    fn locality_matches_greedy_on_the_fan() {
        let t = fan_standard(1);
        assert!(locality_removed(&t, 3).unwrap()); // first diagonal
        assert!(locality_removed(&t, 4).unwrap());
        assert!(!locality_removed(&t, 0).unwrap()); // beta stays
        assert!(!locality_removed(&t, 1).unwrap());
        assert!(locality_removed(&t, 2).is_err()); // boundary
    }

    #[test]
    fn locality_matches_greedy_on_random_triangulations() {
        for g in [1usize, 2] {
            let base = PolygonDomain::standard(ctx(g));
            for seed in 0..5u64 {
                let (p, _) = random_walk(&base, 10, seed).unwrap();
                let mut t = fan_triangulate(&p).unwrap();
                // Scramble with a few exchanges chosen deterministically.
                for k in 0..6usize {
                    let arc = (seed as usize + 2 * k) % t.arc_count();
                    if arc != t.boundary_arc() {
                        if let Ok(next) = diagonal_exchange(&t, arc) {
                            t = next;
                        }
                    }
                }
                let out = greedy_extract_detailed(&t).unwrap();
                for arc in 0..t.arc_count() {
                    if arc == t.boundary_arc() {
                        continue;
                    }
                    let local = locality_removed(&t, arc).unwrap();
                    let global = out.removed.contains(&arc);
                    assert_eq!(local, global, "g={g} seed={seed} arc={arc}");
                }
            }
        }
    }

    #[test]
    fn exchange_of_first_diagonal_matches_hand_computation() {
        let c = ctx(1);
        let t = fan_standard(1);
        let flipped = diagonal_exchange(&t, 3).unwrap();
        let label = flipped.arcs()[3].label.clone();
        // b1 A1 up to orientation
        assert!(
            label == word("b1 A1", &c) || label == word("a1 B1", &c),
            "got {}",
            label.to_text(&c)
        );
        flipped.validate().unwrap();
    }

    #[test]
    fn double_exchange_is_identity() {
        let t = fan_standard(2);
        for arc in 0..t.arc_count() {
            if arc == t.boundary_arc() {
                continue;
            }
            let once = diagonal_exchange(&t, arc).unwrap();
            let twice = diagonal_exchange(&once, arc).unwrap();
            assert_eq!(twice, t, "arc {arc}");
            assert_eq!(once.arc_count(), t.arc_count());
            assert_eq!(once.face_count(), t.face_count());
        }
    }

    #[test]
    fn pentagon_on_the_standard_fan_closes() {
        let t = fan_standard(1);
        // diag2 and diag3 share the middle triangle.
        let path = pentagon_loop(&t, 3, 4).unwrap();
        assert_eq!(path.flips.len(), 5);
        assert_eq!(path.replay().unwrap(), t);
    }

    #[test]
    fn pentagon_rejects_non_adjacent_arcs() {
        let t = fan_standard(2);
        // Arcs 0 and 1 (beta2, alpha2) share the first fan triangle, so pick
        // two arcs with no common face instead.
        let table_free = pentagon_loop(&t, 0, 3);
        let _ = table_free; // either shares or not depending on fan shape
        let err = pentagon_loop(&t, 2, 3).unwrap_err();
        assert!(matches!(err, Error::NotPentagonConfiguration { .. }));
    }

    #[test]
    fn empty_flip_path_translates_to_empty_cs_path() {
        let t = fan_standard(1);
        let cs = flips_to_cs(&FlipPath {
            base: t,
            flips: vec![],
        })
        .unwrap();
        assert!(cs.is_empty());
    }

    #[test]
    fn single_flip_translates() {
        let t = fan_standard(1);
        let path = FlipPath {
            base: t.clone(),
            flips: vec![3],
        };
        let cs = flips_to_cs(&path).unwrap();
        let target = greedy_extract(&path.replay().unwrap()).unwrap();
        assert_eq!(cs.replay().unwrap(), target);
    }

    #[test]
    fn random_flip_paths_translate() {
        for g in [1usize, 2] {
            let base = PolygonDomain::standard(ctx(g));
            for seed in 0..5u64 {
                let (p, _) = random_walk(&base, 8, seed).unwrap();
                let t = fan_triangulate(&p).unwrap();
                let mut flips = Vec::new();
                let mut cur = t.clone();
                let mut k = seed as usize;
                while flips.len() < 6 {
                    let arc = k % cur.arc_count();
                    k += 1;
                    if arc == cur.boundary_arc() {
                        continue;
                    }
                    match diagonal_exchange(&cur, arc) {
                        Ok(next) => {
                            cur = next;
                            flips.push(arc);
                        }
                        Err(_) => continue,
                    }
                }
                let path = FlipPath {
                    base: t,
                    flips,
                };
                let cs = flips_to_cs(&path).unwrap();
                let target = greedy_extract(&path.replay().unwrap()).unwrap();
                assert_eq!(cs.replay().unwrap(), target, "g={g} seed={seed}");
            }
        }
    }
}
