//! Polygon domains: cyclically ordered labelled sides with a pairing
//! involution.
//!
//! A domain of genus g has 4g labelled sides at positions 1..=4g; the boundary
//! side sits implicitly at position 0 and carries the boundary word. Reading
//! the side labels in order multiplies to the inverse boundary word, paired
//! positions carry mutually inverse labels, and gluing the polygon back up
//! along the pairing must produce a single vertex.

use std::fmt;

use num_bigint::BigInt;
use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::word::{Family, GenusContext, Word};

/// A polygon domain. Positions are 1-based in the public API.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonDomain {
    ctx: GenusContext,
    sides: Vec<Word>,    // position p at index p-1
    pairing: Vec<usize>, // 0-based partner indices
}

impl PolygonDomain {
    /// The standard symplectic domain: sides are the single letters 1..4g,
    /// paired 4k+1 <-> 4k+3 and 4k+2 <-> 4k+4 within each block.
    pub fn standard(ctx: GenusContext) -> PolygonDomain {
        let n = ctx.alphabet_size();
        let sides = ctx
            .boundary_inverse()
            .letters()
            .map(|l| Word::from_letters([l]))
            .collect();
        let mut pairing = vec![0usize; n];
        for k in 0..ctx.genus() {
            pairing[4 * k] = 4 * k + 2;
            pairing[4 * k + 2] = 4 * k;
            pairing[4 * k + 1] = 4 * k + 3;
            pairing[4 * k + 3] = 4 * k + 1;
        }
        PolygonDomain { ctx, sides, pairing }
    }

    /// Build a domain from explicit sides and 1-based pairing pairs,
    /// validating all invariants.
    pub fn new(
        ctx: GenusContext,
        sides: Vec<Word>,
        pairs: &[(usize, usize)],
    ) -> Result<PolygonDomain> {
        let n = ctx.alphabet_size();
        if sides.len() != n {
            return Err(Error::Validation(ValidationReport {
                violations: vec![Violation::SideCount {
                    expected: n,
                    actual: sides.len(),
                }],
            }));
        }
        let mut pairing = vec![usize::MAX; n];
        for &(p, q) in pairs {
            if p == 0 || q == 0 || p > n || q > n || p == q {
                return Err(Error::MalformedFile(format!(
                    "bad pairing entry ({p}, {q}) for {n} sides"
                )));
            }
            if pairing[p - 1] != usize::MAX || pairing[q - 1] != usize::MAX {
                return Err(Error::MalformedFile(format!(
                    "position {p} or {q} paired twice"
                )));
            }
            pairing[p - 1] = q - 1;
            pairing[q - 1] = p - 1;
        }
        if pairing.contains(&usize::MAX) {
            return Err(Error::MalformedFile("pairing does not cover all sides".into()));
        }
        let domain = PolygonDomain { ctx, sides, pairing };
        let report = domain.validate();
        if !report.passed() {
            return Err(Error::Validation(report));
        }
        Ok(domain)
    }

    /// Internal constructor for move mechanics; the caller guarantees shape.
    pub(crate) fn from_parts(
        ctx: GenusContext,
        sides: Vec<Word>,
        pairing: Vec<usize>,
    ) -> PolygonDomain {
        PolygonDomain { ctx, sides, pairing }
    }

    pub fn ctx(&self) -> &GenusContext {
        &self.ctx
    }

    pub fn genus(&self) -> usize {
        self.ctx.genus()
    }

    /// Number of labelled sides, 4g.
    pub fn side_count(&self) -> usize {
        self.sides.len()
    }

    /// Label at a 1-based position.
    pub fn side(&self, position: usize) -> &Word {
        &self.sides[position - 1]
    }

    pub fn sides(&self) -> &[Word] {
        &self.sides
    }

    /// 1-based partner of a 1-based position.
    pub fn partner(&self, position: usize) -> usize {
        self.pairing[position - 1] + 1
    }

    pub(crate) fn pairing_internal(&self) -> &[usize] {
        &self.pairing
    }

    /// Total word length of the sides.
    pub fn total_length(&self) -> usize {
        self.sides.iter().map(Word::len).sum()
    }

    /// Total energy of the sides, exact.
    pub fn total_energy(&self) -> BigUint {
        self.sides
            .iter()
            .map(|w| w.energy(&self.ctx))
            .sum()
    }

    pub fn is_standard(&self) -> bool {
        *self == PolygonDomain::standard(self.ctx)
    }

    /// Check every invariant; violations are report entries, not faults.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.ctx.alphabet_size();
        if self.sides.len() != n || self.pairing.len() != n {
            violations.push(Violation::SideCount {
                expected: n,
                actual: self.sides.len(),
            });
            return ValidationReport { violations };
        }

        let mut product = Word::identity();
        for side in &self.sides {
            product = product.multiply(side);
        }
        if product != self.ctx.boundary_inverse() {
            violations.push(Violation::ProductNotBoundaryInverse);
        }

        for i in 0..n {
            let p = self.pairing[i];
            if p >= n || self.pairing[p] != i || p == i {
                violations.push(Violation::PairingNotInvolution { position: i + 1 });
                continue;
            }
            if p == i + 1 || i == p + 1 {
                if i < p {
                    violations.push(Violation::PairingAdjacent { position: i + 1 });
                }
                continue;
            }
            if i < p && self.sides[p] != self.sides[i].inverse() {
                violations.push(Violation::PairedLabelsNotInverse { position: i + 1 });
            }
        }

        for (i, side) in self.sides.iter().enumerate() {
            if side.is_identity() {
                violations.push(Violation::IdentityLabel { position: i + 1 });
            }
        }

        if violations.is_empty() {
            let det = abelianization_determinant(&self.cg_set().arcs, &self.ctx);
            if det.magnitude() != &BigUint::from(1u32) {
                violations.push(Violation::AbelianizationNotUnimodular {
                    det: det.to_string(),
                });
            }
            let orbits = self.corner_orbits();
            if orbits != 1 {
                violations.push(Violation::CornersNotSingleVertex { orbits });
            }
        }

        ValidationReport { violations }
    }

    /// Number of corner classes after gluing paired sides. A genuine domain
    /// glues every polygon corner to the single boundary base point.
    fn corner_orbits(&self) -> usize {
        // Corner c_k sits between side k and side k+1 (sides 0..=4g, side 0
        // the boundary). Gluing side j to its partner reversed identifies
        // corner j-1 with corner partner(j), and corner j with partner(j)-1.
        let n = self.sides.len() + 1;
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for j in 1..=self.sides.len() {
            let q = self.pairing[j - 1] + 1;
            let (a, b) = (find(&mut uf, j - 1), find(&mut uf, q % n));
            uf[a] = b;
            let (a, b) = (find(&mut uf, j % n), find(&mut uf, q - 1));
            uf[a] = b;
        }
        let mut roots: Vec<usize> = (0..n).map(|x| find(&mut uf, x)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// The canonical generating arcs: for each pair, the label at the smaller
    /// position, ordered by that position.
    pub fn cg_set(&self) -> CgSet {
        let mut arcs = Vec::with_capacity(self.ctx.rank());
        let mut positions = Vec::with_capacity(self.ctx.rank());
        for i in 0..self.sides.len() {
            let p = self.pairing[i];
            if i < p {
                arcs.push(self.sides[i].clone());
                positions.push((i + 1, p + 1));
            }
        }
        CgSet { arcs, positions }
    }

    /// Canonical index (0-based within the CG set) of the arc whose copies sit
    /// at the given 1-based position and its partner.
    pub fn arc_index_of_position(&self, position: usize) -> usize {
        let i = position.min(self.partner(position));
        (1..i)
            .filter(|&j| j < self.partner(j))
            .count()
    }

    /// Build the domain obtained by applying a boundary-preserving map to the
    /// standard domain's side labels.
    pub fn from_mapping_class(map: &MappingClass, ctx: GenusContext) -> Result<PolygonDomain> {
        if !map.preserves_boundary(&ctx) {
            return Err(Error::BoundaryNotPreserved);
        }
        let standard = PolygonDomain::standard(ctx);
        let sides: Vec<Word> = standard.sides.iter().map(|s| map.apply(s, &ctx)).collect();
        let domain = PolygonDomain {
            ctx,
            sides,
            pairing: standard.pairing,
        };
        let report = domain.validate();
        if !report.passed() {
            return Err(Error::Validation(report));
        }
        Ok(domain)
    }

    /// Classify every side as unbalanced, balanced, or neutral. Neighbors are
    /// taken within positions 1..=4g only; the boundary side never takes part.
    pub fn balance_classify(&self) -> BalanceReport {
        let n = self.sides.len();
        let mut entries = Vec::with_capacity(n);
        for i in 0..n {
            let side = &self.sides[i];
            let left_depth = if i > 0 {
                self.sides[i - 1].cancellation_with(side)
            } else {
                0
            };
            let right_depth = if i + 1 < n {
                side.cancellation_with(&self.sides[i + 1])
            } else {
                0
            };
            let len = side.len();
            let status;
            let witness;
            if 2 * right_depth > len || 2 * left_depth > len {
                if right_depth >= left_depth {
                    status = BalanceStatus::UnbalancedRight;
                    witness = Some(BalanceWitness::Right {
                        l: side.prefix(len - right_depth),
                        y: self.sides[i + 1].prefix(right_depth),
                        r: self.sides[i + 1].suffix(self.sides[i + 1].len() - right_depth),
                    });
                } else {
                    status = BalanceStatus::UnbalancedLeft;
                    let prev = &self.sides[i - 1];
                    witness = Some(BalanceWitness::Left {
                        l: prev.prefix(prev.len() - left_depth),
                        x: side.prefix(left_depth),
                        r: side.suffix(len - left_depth),
                    });
                }
            } else if len > 0
                && len.is_multiple_of(2)
                && left_depth == len / 2
                && right_depth == len / 2
                && i > 0
                && i + 1 < n
            {
                let m = len / 2;
                let prev = &self.sides[i - 1];
                let next = &self.sides[i + 1];
                status = BalanceStatus::Balanced;
                witness = Some(BalanceWitness::Even {
                    l: prev.prefix(prev.len() - m),
                    x: side.prefix(m),
                    y: next.prefix(m),
                    r: next.suffix(next.len() - m),
                });
            } else {
                status = BalanceStatus::Neutral;
                witness = None;
            }
            entries.push(SideBalance {
                status,
                left_depth,
                right_depth,
                witness,
            });
        }
        BalanceReport { entries }
    }
}

impl fmt::Display for PolygonDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self
            .sides
            .iter()
            .map(|s| s.to_text(&self.ctx))
            .collect();
        write!(f, "({})", labels.join(" | "))
    }
}

/// Ordered canonical generating set read off a domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CgSet {
    /// Canonical labels, ordered by first appearance around the polygon.
    pub arcs: Vec<Word>,
    /// For each arc, the 1-based positions of its two copies (smaller first).
    pub positions: Vec<(usize, usize)>,
}

/// A boundary-preserving endomorphism given by images of the symplectic basis
/// (a_1..a_g, b_1..b_g). Boundary preservation makes it a mapping class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingClass {
    images: Vec<Word>, // a_1..a_g then b_1..b_g
}

impl MappingClass {
    pub fn identity(ctx: &GenusContext) -> MappingClass {
        let g = ctx.genus();
        let mut images = Vec::with_capacity(2 * g);
        for j in 1..=g {
            images.push(generator(ctx, Family::Alpha, j));
        }
        for j in 1..=g {
            images.push(generator(ctx, Family::Beta, j));
        }
        MappingClass { images }
    }

    /// Images listed as (a_1..a_g, b_1..b_g).
    pub fn new(images: Vec<Word>, ctx: &GenusContext) -> Result<MappingClass> {
        if images.len() != ctx.rank() {
            return Err(Error::MalformedFile(format!(
                "expected {} generator images, got {}",
                ctx.rank(),
                images.len()
            )));
        }
        Ok(MappingClass { images })
    }

    pub fn image_of_alpha(&self, j: usize, ctx: &GenusContext) -> &Word {
        let _ = ctx;
        &self.images[j - 1]
    }

    pub fn image_of_beta(&self, j: usize, ctx: &GenusContext) -> &Word {
        &self.images[ctx.genus() + j - 1]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Substitute images for letters and reduce.
    pub fn apply(&self, w: &Word, ctx: &GenusContext) -> Word {
        let g = ctx.genus();
        let mut acc = Word::identity();
        for letter in w.letters() {
            let j = letter.subscript(ctx);
            let base = match letter.family() {
                Family::Alpha => &self.images[j - 1],
                Family::Beta => &self.images[g + j - 1],
            };
            let factor = if letter.is_inverse() {
                base.inverse()
            } else {
                base.clone()
            };
            acc = acc.multiply(&factor);
        }
        acc
    }

    /// Composition: `self` after `other`.
    pub fn compose(&self, other: &MappingClass, ctx: &GenusContext) -> MappingClass {
        MappingClass {
            images: other
                .images
                .iter()
                .map(|w| self.apply(w, ctx))
                .collect(),
        }
    }

    pub fn preserves_boundary(&self, ctx: &GenusContext) -> bool {
        self.apply(&ctx.boundary(), ctx) == ctx.boundary()
    }

    /// Images in canonical CG order (b_g, a_g, b_{g-1}, a_{g-1}, ...),
    /// matching the arc order of the standard domain.
    pub fn to_cg_tuple(&self, ctx: &GenusContext) -> Vec<Word> {
        let g = ctx.genus();
        let mut out = Vec::with_capacity(2 * g);
        for k in 0..g {
            let j = g - k;
            out.push(self.images[g + j - 1].clone()); // b_j
            out.push(self.images[j - 1].clone()); // a_j
        }
        out
    }

    /// Inverse of `to_cg_tuple`.
    pub fn from_cg_tuple(tuple: &[Word], ctx: &GenusContext) -> Result<MappingClass> {
        let g = ctx.genus();
        if tuple.len() != 2 * g {
            return Err(Error::MalformedFile(format!(
                "expected a tuple of {} words, got {}",
                2 * g,
                tuple.len()
            )));
        }
        let mut images = vec![Word::identity(); 2 * g];
        for k in 0..g {
            let j = g - k;
            images[g + j - 1] = tuple[2 * k].clone();
            images[j - 1] = tuple[2 * k + 1].clone();
        }
        Ok(MappingClass { images })
    }
}

fn generator(ctx: &GenusContext, family: Family, j: usize) -> Word {
    let base = 4 * (ctx.genus() - j);
    let index = match family {
        Family::Beta => base + 1,
        Family::Alpha => base + 2,
    };
    Word::from_letters([crate::word::Letter::from_index(index, ctx).unwrap()])
}

/// Determinant of the abelianization matrix of the 2g arc labels, exact.
pub fn abelianization_determinant(arcs: &[Word], ctx: &GenusContext) -> BigInt {
    let n = ctx.rank();
    if arcs.len() != n {
        return BigInt::from(0);
    }
    let mut m: Vec<Vec<BigInt>> = arcs
        .iter()
        .map(|w| w.abelianize(ctx).into_iter().map(BigInt::from).collect())
        .collect();
    // Fraction-free Gaussian elimination (Bareiss).
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k] == BigInt::from(0) {
            let Some(swap) = (k + 1..n).find(|&r| m[r][k] != BigInt::from(0)) else {
                return BigInt::from(0);
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::from(0);
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "pass")
        } else {
            let items: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", items.join("; "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SideCount { expected: usize, actual: usize },
    ProductNotBoundaryInverse,
    PairingNotInvolution { position: usize },
    PairingAdjacent { position: usize },
    PairedLabelsNotInverse { position: usize },
    IdentityLabel { position: usize },
    AbelianizationNotUnimodular { det: String },
    CornersNotSingleVertex { orbits: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SideCount { expected, actual } => {
                write!(f, "expected {expected} sides, got {actual}")
            }
            Violation::ProductNotBoundaryInverse => {
                write!(f, "side product is not the inverse boundary word")
            }
            Violation::PairingNotInvolution { position } => {
                write!(f, "pairing is not a fixed-point-free involution at position {position}")
            }
            Violation::PairingAdjacent { position } => {
                write!(f, "position {position} is paired with an adjacent side")
            }
            Violation::PairedLabelsNotInverse { position } => {
                write!(f, "labels at position {position} and its partner are not inverse")
            }
            Violation::IdentityLabel { position } => {
                write!(f, "identity label at position {position}")
            }
            Violation::AbelianizationNotUnimodular { det } => {
                write!(f, "abelianization determinant is {det}, expected +-1")
            }
            Violation::CornersNotSingleVertex { orbits } => {
                write!(f, "corner gluing yields {orbits} vertices, expected 1")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BalanceStatus {
    UnbalancedRight,
    UnbalancedLeft,
    Balanced,
    Neutral,
}

/// Reduced factorizations witnessing a side's classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BalanceWitness {
    /// c_i = l * y^-1 and c_{i+1} = y * r with |y| > |l|.
    Right { l: Word, y: Word, r: Word },
    /// c_{i-1} = l * x^-1 and c_i = x * r with |x| > |r|.
    Left { l: Word, x: Word, r: Word },
    /// c_{i-1} = l x^-1, c_i = x y^-1, c_{i+1} = y r with |x| = |y|.
    Even { l: Word, x: Word, y: Word, r: Word },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideBalance {
    pub status: BalanceStatus,
    pub left_depth: usize,
    pub right_depth: usize,
    pub witness: Option<BalanceWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceReport {
    entries: Vec<SideBalance>,
}

impl BalanceReport {
    /// Entry for a 1-based position.
    pub fn side(&self, position: usize) -> &SideBalance {
        &self.entries[position - 1]
    }

    pub fn entries(&self) -> &[SideBalance] {
        &self.entries
    }

    pub fn has_unbalanced(&self) -> bool {
        self.entries.iter().any(|e| {
            matches!(
                e.status,
                BalanceStatus::UnbalancedRight | BalanceStatus::UnbalancedLeft
            )
        })
    }

    pub fn has_balanced(&self) -> bool {
        self.entries
            .iter()
            .any(|e| e.status == BalanceStatus::Balanced)
    }
}
