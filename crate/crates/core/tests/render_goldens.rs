//! Frozen renderings of the standard genus-1 diagram. Any layout change must
//! update these strings deliberately.

use cutslide::chord::{render, to_chord_diagram};
use cutslide::domain::PolygonDomain;
use cutslide::word::GenusContext;

fn diagram() -> cutslide::chord::ChordDiagram {
    to_chord_diagram(&PolygonDomain::standard(GenusContext::new(1).unwrap()))
}

#[test]
fn ascii_golden() {
    let rendered = render(&diagram(), "ascii").unwrap();
    let lines: Vec<&str> = rendered.lines().collect();
    assert_eq!(
        lines,
        vec![
            "",
            "     +-------+",
            " +---|---+   |",
            "=*===*===*===*===T=",
            " 4   3   2   1",
        ]
    );
}

#[test]
fn dot_golden() {
    let expected = "graph fatgraph_rose {\n  label=\"cyclic order at the vertex: 1 2 3 4 tail\";\n  core [shape=point];\n  tail_end [shape=plaintext, label=\"tail\"];\n  core -- tail_end [label=\"tail\"];\n  core -- core [label=\"chord 1 (1-3): b1\"];\n  core -- core [label=\"chord 2 (2-4): a1\"];\n}\n";
    assert_eq!(render(&diagram(), "dot").unwrap(), expected);
}

#[test]
fn svg_golden() {
    let expected = r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="200" height="200" viewBox="0 0 200 200">
  <line x1="20" y1="160" x2="180" y2="160" stroke="black" stroke-width="3"/>
  <line x1="180" y1="160" x2="180" y2="184" stroke="black" stroke-width="3"/>
  <text x="180" y="198" font-size="12" text-anchor="middle">tail</text>
  <path d="M 60 160 A 40 40 0 0 1 140 160" fill="none" stroke="black" stroke-width="1.5"/>
  <path d="M 20 160 A 40 40 0 0 1 100 160" fill="none" stroke="black" stroke-width="1.5"/>
  <circle cx="140" cy="160" r="3" fill="black"/>
  <text x="140" y="176" font-size="12" text-anchor="middle">1</text>
  <circle cx="100" cy="160" r="3" fill="black"/>
  <text x="100" y="176" font-size="12" text-anchor="middle">2</text>
  <circle cx="60" cy="160" r="3" fill="black"/>
  <text x="60" y="176" font-size="12" text-anchor="middle">3</text>
  <circle cx="20" cy="160" r="3" fill="black"/>
  <text x="20" y="176" font-size="12" text-anchor="middle">4</text>
</svg>
"#;
    assert_eq!(render(&diagram(), "svg").unwrap(), expected);
}
