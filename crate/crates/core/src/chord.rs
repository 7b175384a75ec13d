//! Linear chord diagrams dual to polygon domains.
//!
//! Slots 1..=4g along the core correspond to polygon side positions; a chord
//! joins the two slots of an identified pair. The tail marks the core end
//! next to slot 1, where the boundary side sits. A chord slide moves one
//! chord endpoint past the neighboring chord and is exactly a triangle
//! cut-slide move in the polygon picture: sliding the endpoint at slot s
//! toward the tail realizes the move cs(s-1, first), sliding it
//! away realizes cs(s, second).

use crate::domain::PolygonDomain;
use crate::error::{Error, Result};
use crate::moves::{apply_move, Attach, CsMove};
use crate::word::{GenusContext, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlideDirection {
    TowardTail,
    AwayFromTail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordDiagram {
    ctx: GenusContext,
    pairing: Vec<usize>, // 0-based slot partners
    labels: Option<Vec<Word>>,
}

impl ChordDiagram {
    /// Build an unlabeled diagram from 1-based chord endpoint pairs.
    pub fn from_chords(ctx: GenusContext, chords: &[(usize, usize)]) -> Result<ChordDiagram> {
        let n = ctx.alphabet_size();
        let mut pairing = vec![usize::MAX; n];
        for &(p, q) in chords {
            if p == 0 || q == 0 || p > n || q > n || p == q {
                return Err(Error::MalformedFile(format!("bad chord ({p}, {q})")));
            }
            if pairing[p - 1] != usize::MAX || pairing[q - 1] != usize::MAX {
                return Err(Error::MalformedFile(format!(
                    "slot {p} or {q} used by two chords"
                )));
            }
            pairing[p - 1] = q - 1;
            pairing[q - 1] = p - 1;
        }
        if pairing.contains(&usize::MAX) {
            return Err(Error::MalformedFile("chords do not cover all slots".into()));
        }
        for i in 0..n {
            if pairing[i] == i + 1 || (i > 0 && pairing[i] == i - 1) {
                return Err(Error::MalformedFile(format!(
                    "chord joins adjacent slots {} and {}",
                    i + 1,
                    pairing[i] + 1
                )));
            }
        }
        Ok(ChordDiagram {
            ctx,
            pairing,
            labels: None,
        })
    }

    pub fn ctx(&self) -> &GenusContext {
        &self.ctx
    }

    pub fn slot_count(&self) -> usize {
        self.pairing.len()
    }

    /// 1-based partner slot.
    pub fn partner(&self, slot: usize) -> usize {
        self.pairing[slot - 1] + 1
    }

    pub fn label(&self, slot: usize) -> Option<&Word> {
        self.labels.as_ref().map(|l| &l[slot - 1])
    }

    pub fn is_labeled(&self) -> bool {
        self.labels.is_some()
    }

    /// Chords as 1-based slot pairs, smaller endpoint first, in slot order.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.pairing.len() / 2);
        for i in 0..self.pairing.len() {
            let p = self.pairing[i];
            if i < p {
                out.push((i + 1, p + 1));
            }
        }
        out
    }
}

/// Transcribe a domain: slot i carries side i, chords copy the pairing.
pub fn to_chord_diagram(domain: &PolygonDomain) -> ChordDiagram {
    ChordDiagram {
        ctx: *domain.ctx(),
        pairing: domain.pairing_internal().to_vec(),
        labels: Some(domain.sides().to_vec()),
    }
}

/// Inverse transcription; the diagram must be labeled.
pub fn from_chord_diagram(diagram: &ChordDiagram) -> Result<PolygonDomain> {
    let labels = diagram
        .labels
        .as_ref()
        .ok_or_else(|| Error::Usage("cannot rebuild a polygon from an unlabeled diagram".into()))?;
    let chords = diagram.chords();
    PolygonDomain::new(diagram.ctx, labels.clone(), &chords)
}

/// Slide the chord endpoint at `slot` along the neighboring chord in the
/// given direction. Labeled diagrams evolve through the polygon move;
/// unlabeled ones apply the same slot surgery to the pairing alone.
pub fn chord_slide(
    diagram: &ChordDiagram,
    slot: usize,
    direction: SlideDirection,
) -> Result<ChordDiagram> {
    let n = diagram.slot_count();
    if slot == 0 || slot > n {
        return Err(Error::InvalidSlide {
            slot,
            reason: format!("slot out of range 1..={n}"),
        });
    }
    let mv = match direction {
        SlideDirection::TowardTail => {
            if slot < 2 {
                return Err(Error::InvalidSlide {
                    slot,
                    reason: "no neighbor on the tail side".into(),
                });
            }
            CsMove::first(slot - 1)
        }
        SlideDirection::AwayFromTail => {
            if slot >= n {
                return Err(Error::InvalidSlide {
                    slot,
                    reason: "no neighbor away from the tail".into(),
                });
            }
            CsMove::second(slot)
        }
    };
    let neighbor = match direction {
        SlideDirection::TowardTail => slot - 1,
        SlideDirection::AwayFromTail => slot + 1,
    };
    if diagram.partner(slot) == neighbor {
        return Err(Error::InvalidSlide {
            slot,
            reason: "the neighboring slot belongs to the same chord".into(),
        });
    }

    match &diagram.labels {
        Some(_) => {
            let domain = from_chord_diagram(diagram)?;
            let moved = apply_move(&domain, mv)?;
            Ok(to_chord_diagram(&moved))
        }
        None => Ok(ChordDiagram {
            ctx: diagram.ctx,
            pairing: slide_pairing(&diagram.pairing, mv)?,
            labels: None,
        }),
    }
}

/// The pairing surgery of a move, without labels: positions i, i+1 collapse
/// to one slot, the glue target expands to two.
fn slide_pairing(pairing: &[usize], mv: CsMove) -> Result<Vec<usize>> {
    let n = pairing.len();
    let i0 = mv.index - 1;
    let (glued0, survivor0) = match mv.attach {
        Attach::First => (i0, i0 + 1),
        Attach::Second => (i0 + 1, i0),
    };
    let target0 = pairing[glued0];
    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut collapsed = 0;
    let mut run = (0, 0);
    let mut cursor = 0;
    for o in 0..n {
        if o == i0 {
            collapsed = cursor;
            cursor += 1;
        } else if o == i0 + 1 {
            // merged
        } else if o == target0 {
            run = (cursor, cursor + 1);
            cursor += 2;
        } else {
            map[o] = Some(cursor);
            cursor += 1;
        }
    }
    let (dbar, survivor_new) = match mv.attach {
        Attach::First => (run.1, run.0),
        Attach::Second => (run.0, run.1),
    };
    let mut out = vec![usize::MAX; n];
    out[collapsed] = dbar;
    out[dbar] = collapsed;
    let survivor_partner = map[pairing[survivor0]]
        .ok_or_else(|| Error::InternalInvariantViolation("survivor partner vanished".into()))?;
    out[survivor_new] = survivor_partner;
    out[survivor_partner] = survivor_new;
    for o in 0..n {
        if let (Some(a), Some(b)) = (map[o], map[pairing[o]]) {
            out[a] = b;
        }
    }
    Ok(out)
}

/// Deterministic text renderings of a diagram.
pub fn render(diagram: &ChordDiagram, format: &str) -> Result<String> {
    match format {
        "ascii" => Ok(render_ascii(diagram)),
        "dot" => Ok(render_dot(diagram)),
        "svg" => Ok(render_svg(diagram)),
        "" => Err(Error::Usage("empty render format".into())),
        other => Err(Error::Usage(format!(
            "unknown render format `{other}` (expected ascii, dot, or svg)"
        ))),
    }
}

const SLOT_WIDTH: usize = 4;

/// Column of a 1-based slot; slot 1 sits rightmost, next to the tail.
fn slot_column(n: usize, slot: usize) -> usize {
    SLOT_WIDTH * (n - slot) + 1
}

fn render_ascii(diagram: &ChordDiagram) -> String {
    let n = diagram.slot_count();
    let tail_col = SLOT_WIDTH * n + 1;
    let width = tail_col + 2;
    let chords = diagram.chords();
    // Height levels by left (larger-slot) endpoint column, innermost first.
    let mut order: Vec<usize> = (0..chords.len()).collect();
    order.sort_by_key(|&j| slot_column(n, chords[j].0.max(chords[j].1)));
    let mut level = vec![0usize; chords.len()];
    for (rank, &j) in order.iter().enumerate() {
        level[j] = rank + 1;
    }
    let height = chords.len() + 1;

    let mut grid = vec![vec![' '; width]; height + 2];
    let core_row = height;
    for x in 0..width {
        grid[core_row][x] = '=';
    }
    grid[core_row][tail_col] = 'T';
    for (j, &(a, b)) in chords.iter().enumerate() {
        let (xa, xb) = (slot_column(n, a), slot_column(n, b));
        let (left, right) = (xa.min(xb), xa.max(xb));
        let row = core_row - level[j];
        for x in left + 1..right {
            if grid[row][x] == ' ' {
                grid[row][x] = '-';
            }
        }
        grid[row][left] = '+';
        grid[row][right] = '+';
        for r in row + 1..core_row {
            for x in [left, right] {
                if grid[r][x] == ' ' || grid[r][x] == '-' {
                    grid[r][x] = '|';
                }
            }
        }
    }
    for slot in 1..=n {
        grid[core_row][slot_column(n, slot)] = '*';
    }
    // Slot numbers under the core.
    for slot in 1..=n {
        let text = slot.to_string();
        let col = slot_column(n, slot);
        for (k, ch) in text.chars().enumerate() {
            grid[core_row + 1][col + k] = ch;
        }
    }
    let mut out = String::new();
    for row in grid {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn render_dot(diagram: &ChordDiagram) -> String {
    let n = diagram.slot_count();
    let chords = diagram.chords();
    let mut out = String::new();
    out.push_str("graph fatgraph_rose {\n");
    let cyclic: Vec<String> = (1..=n)
        .map(|s| format!("{s}"))
        .chain(std::iter::once("tail".to_string()))
        .collect();
    out.push_str(&format!(
        "  label=\"cyclic order at the vertex: {}\";\n",
        cyclic.join(" ")
    ));
    out.push_str("  core [shape=point];\n");
    out.push_str("  tail_end [shape=plaintext, label=\"tail\"];\n");
    out.push_str("  core -- tail_end [label=\"tail\"];\n");
    for (j, &(a, b)) in chords.iter().enumerate() {
        let label = match diagram.label(a) {
            Some(word) => format!("chord {} ({a}-{b}): {}", j + 1, word_text(diagram, word)),
            None => format!("chord {} ({a}-{b})", j + 1),
        };
        out.push_str(&format!("  core -- core [label=\"{label}\"];\n"));
    }
    out.push_str("}\n");
    out
}

fn word_text(diagram: &ChordDiagram, word: &Word) -> String {
    let text = word.to_text(&diagram.ctx);
    if text.is_empty() {
        "1".to_string()
    } else {
        text
    }
}

fn render_svg(diagram: &ChordDiagram) -> String {
    let n = diagram.slot_count();
    let spacing = 40usize;
    let margin = 20usize;
    let base_y = 160usize;
    let x_of = |slot: usize| margin + spacing * (n - slot);
    let tail_x = margin + spacing * n;
    let width = tail_x + margin;
    let height = base_y + 40;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    out.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{base_y}\" x2=\"{tail_x}\" y2=\"{base_y}\" stroke=\"black\" stroke-width=\"3\"/>\n",
        x_of(n)
    ));
    out.push_str(&format!(
        "  <line x1=\"{tail_x}\" y1=\"{base_y}\" x2=\"{tail_x}\" y2=\"{}\" stroke=\"black\" stroke-width=\"3\"/>\n",
        base_y + 24
    ));
    out.push_str(&format!(
        "  <text x=\"{tail_x}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">tail</text>\n",
        base_y + 38
    ));
    for (a, b) in diagram.chords() {
        let (xa, xb) = (x_of(a), x_of(b));
        let (left, right) = (xa.min(xb), xa.max(xb));
        let r = (right - left) / 2;
        out.push_str(&format!(
            "  <path d=\"M {left} {base_y} A {r} {r} 0 0 1 {right} {base_y}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n"
        ));
    }
    for slot in 1..=n {
        let x = x_of(slot);
        out.push_str(&format!(
            "  <circle cx=\"{x}\" cy=\"{base_y}\" r=\"3\" fill=\"black\"/>\n"
        ));
        out.push_str(&format!(
            "  <text x=\"{x}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{slot}</text>\n",
            base_y + 16
        ));
    }
    out.push_str("</svg>\n");
    out
}
