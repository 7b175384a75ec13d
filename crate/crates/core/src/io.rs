//! Versioned JSON file formats shared by the CLI and the test suites.
//!
//! Every emitted document carries `"schema": 1`. Words are whitespace-
//! separated token strings, moves use the `cs(i, first)` text form, and
//! triangulation faces reference directed arcs as signed 1-based ids
//! (negative means reversed).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chord::ChordDiagram;
use crate::domain::{MappingClass, PolygonDomain};
use crate::error::{Error, Result};
use crate::moves::{CsMove, CsPath};
use crate::relations::{LoopCensus, RelationLoop};
use crate::triangulation::{ArcRecord, DirectedArc, FlipPath, Triangulation};
use crate::word::{GenusContext, Word};

pub const SCHEMA_VERSION: u32 = 1;

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

fn check_schema(schema: u32) -> Result<()> {
    if schema != SCHEMA_VERSION {
        return Err(Error::MalformedFile(format!(
            "unsupported schema version {schema}, expected {SCHEMA_VERSION}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DomainFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub genus: usize,
    pub sides: Vec<String>,
    pub pairing: Vec<(usize, usize)>,
}

impl DomainFile {
    pub fn from_domain(domain: &PolygonDomain) -> DomainFile {
        let ctx = domain.ctx();
        DomainFile {
            schema: SCHEMA_VERSION,
            genus: domain.genus(),
            sides: domain.sides().iter().map(|w| w.to_text(ctx)).collect(),
            pairing: domain.cg_set().positions,
        }
    }

    pub fn to_domain(&self) -> Result<PolygonDomain> {
        check_schema(self.schema)?;
        let ctx = GenusContext::new(self.genus)?;
        let sides = self
            .sides
            .iter()
            .map(|s| Word::parse(s, &ctx))
            .collect::<Result<Vec<_>>>()?;
        PolygonDomain::new(ctx, sides, &self.pairing)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub genus: usize,
    pub images: BTreeMap<String, String>,
}

impl MapFile {
    pub fn from_mapping_class(map: &MappingClass, ctx: &GenusContext) -> MapFile {
        let mut images = BTreeMap::new();
        for j in 1..=ctx.genus() {
            images.insert(format!("a{j}"), map.image_of_alpha(j, ctx).to_text(ctx));
            images.insert(format!("b{j}"), map.image_of_beta(j, ctx).to_text(ctx));
        }
        MapFile {
            schema: SCHEMA_VERSION,
            genus: ctx.genus(),
            images,
        }
    }

    pub fn to_mapping_class(&self) -> Result<(MappingClass, GenusContext)> {
        check_schema(self.schema)?;
        let ctx = GenusContext::new(self.genus)?;
        let mut images = Vec::with_capacity(ctx.rank());
        for prefix in ["a", "b"] {
            for j in 1..=ctx.genus() {
                let key = format!("{prefix}{j}");
                let text = self.images.get(&key).ok_or_else(|| {
                    Error::MalformedFile(format!("missing image for generator {key}"))
                })?;
                images.push(Word::parse(text, &ctx)?);
            }
        }
        Ok((MappingClass::new(images, &ctx)?, ctx))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub base: DomainFile,
    pub moves: Vec<String>,
}

impl PathFile {
    pub fn from_path(path: &CsPath) -> PathFile {
        PathFile {
            schema: SCHEMA_VERSION,
            base: DomainFile::from_domain(&path.base),
            moves: path.moves.iter().map(|m| m.to_string()).collect(),
        }
    }

    pub fn to_path(&self) -> Result<CsPath> {
        check_schema(self.schema)?;
        let base = self.base.to_domain()?;
        let moves = self
            .moves
            .iter()
            .map(|m| m.parse::<CsMove>())
            .collect::<Result<Vec<_>>>()?;
        Ok(CsPath { base, moves })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArcFile {
    pub id: usize,
    pub label: String,
    #[serde(default)]
    pub boundary: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangulationFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub genus: usize,
    pub arcs: Vec<ArcFile>,
    /// Faces as clockwise triples of signed 1-based arc ids.
    pub faces: Vec<[i64; 3]>,
}

impl TriangulationFile {
    pub fn from_triangulation(t: &Triangulation) -> TriangulationFile {
        let ctx = t.ctx();
        let arcs = t
            .arcs()
            .iter()
            .enumerate()
            .map(|(id, arc)| ArcFile {
                id,
                label: arc.label.to_text(ctx),
                boundary: arc.is_boundary,
            })
            .collect();
        let encode = |d: &DirectedArc| -> i64 {
            let signed = (d.arc + 1) as i64;
            match d.dir {
                crate::triangulation::Dir::Fwd => signed,
                crate::triangulation::Dir::Bwd => -signed,
            }
        };
        let faces = t
            .faces()
            .iter()
            .map(|f| [encode(&f[0]), encode(&f[1]), encode(&f[2])])
            .collect();
        TriangulationFile {
            schema: SCHEMA_VERSION,
            genus: ctx.genus(),
            arcs,
            faces,
        }
    }

    pub fn to_triangulation(&self) -> Result<Triangulation> {
        check_schema(self.schema)?;
        let ctx = GenusContext::new(self.genus)?;
        let mut arcs = vec![None; self.arcs.len()];
        for arc in &self.arcs {
            if arc.id >= arcs.len() || arcs[arc.id].is_some() {
                return Err(Error::MalformedFile(format!(
                    "arc ids must be 0..{} without repeats",
                    arcs.len()
                )));
            }
            arcs[arc.id] = Some(ArcRecord {
                label: Word::parse(&arc.label, &ctx)?,
                is_boundary: arc.boundary,
            });
        }
        let arcs: Vec<ArcRecord> = arcs.into_iter().map(Option::unwrap).collect();
        let decode = |signed: i64| -> Result<DirectedArc> {
            let id = signed.unsigned_abs() as usize;
            if signed == 0 || id > arcs.len() {
                return Err(Error::MalformedFile(format!("bad directed arc id {signed}")));
            }
            Ok(if signed > 0 {
                DirectedArc::fwd(id - 1)
            } else {
                DirectedArc::bwd(id - 1)
            })
        };
        let faces = self
            .faces
            .iter()
            .map(|f| Ok([decode(f[0])?, decode(f[1])?, decode(f[2])?]))
            .collect::<Result<Vec<_>>>()?;
        Triangulation::new(ctx, arcs, faces)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlipPathFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub triangulation: TriangulationFile,
    pub flips: Vec<usize>,
}

impl FlipPathFile {
    pub fn from_flip_path(path: &FlipPath) -> FlipPathFile {
        FlipPathFile {
            schema: SCHEMA_VERSION,
            triangulation: TriangulationFile::from_triangulation(&path.base),
            flips: path.flips.clone(),
        }
    }

    pub fn to_flip_path(&self) -> Result<FlipPath> {
        check_schema(self.schema)?;
        Ok(FlipPath {
            base: self.triangulation.to_triangulation()?,
            flips: self.flips.clone(),
        })
    }
}

/// Output of `random-walk`: a domain document (readable anywhere a domain
/// file is expected) extended with the walk metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WalkFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub genus: usize,
    pub sides: Vec<String>,
    pub pairing: Vec<(usize, usize)>,
    pub seed: u64,
    pub steps: usize,
    pub moves: Vec<String>,
}

impl WalkFile {
    pub fn new(domain: &PolygonDomain, path: &CsPath, seed: u64) -> WalkFile {
        let doc = DomainFile::from_domain(domain);
        WalkFile {
            schema: SCHEMA_VERSION,
            genus: doc.genus,
            sides: doc.sides,
            pairing: doc.pairing,
            seed,
            steps: path.moves.len(),
            moves: path.moves.iter().map(|m| m.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceStepFile {
    pub mv: String,
    pub rationale: String,
    pub len_before: usize,
    pub len_after: usize,
    pub removed: String,
    pub added: String,
    pub substitution: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub genus: usize,
    pub start: DomainFile,
    pub steps: Vec<TraceStepFile>,
    pub end: DomainFile,
}

impl TraceFile {
    pub fn from_trace(trace: &crate::reduction::ReductionTrace) -> TraceFile {
        let ctx = trace.start.ctx();
        TraceFile {
            schema: SCHEMA_VERSION,
            genus: trace.start.genus(),
            start: DomainFile::from_domain(&trace.start),
            steps: trace
                .steps
                .iter()
                .map(|s| TraceStepFile {
                    mv: s.mv.to_string(),
                    rationale: s.rationale.to_string(),
                    len_before: s.len_before,
                    len_after: s.len_after,
                    removed: s.removed_label.to_text(ctx),
                    added: s.added_label.to_text(ctx),
                    substitution: s.nielsen.describe(),
                })
                .collect(),
            end: DomainFile::from_domain(&trace.final_domain),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorizationFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub genus: usize,
    pub map: BTreeMap<String, String>,
    pub path: PathFile,
    pub substitutions: Vec<String>,
}

impl FactorizationFile {
    pub fn new(
        map: &MappingClass,
        ctx: &GenusContext,
        factorization: &crate::reduction::Factorization,
    ) -> FactorizationFile {
        FactorizationFile {
            schema: SCHEMA_VERSION,
            genus: ctx.genus(),
            map: MapFile::from_mapping_class(map, ctx).images,
            path: PathFile::from_path(&factorization.path),
            substitutions: factorization.steps.iter().map(|s| s.describe()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoopFile {
    pub moves: Vec<String>,
    pub class: String,
    pub support: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub genus: usize,
    pub max_len: usize,
    pub counts: BTreeMap<String, usize>,
    pub loops: Vec<LoopFile>,
}

impl CensusFile {
    pub fn from_census(census: &LoopCensus) -> CensusFile {
        let counts_struct = census.counts();
        let mut counts = BTreeMap::new();
        counts.insert("involutivity".to_string(), counts_struct.involutivity);
        counts.insert("commutativity".to_string(), counts_struct.commutativity);
        counts.insert("triangle".to_string(), counts_struct.triangle);
        counts.insert("pentagon-type".to_string(), counts_struct.pentagon_type);
        counts.insert("unclassified".to_string(), counts_struct.unclassified);
        CensusFile {
            schema: SCHEMA_VERSION,
            genus: census.base.genus(),
            max_len: census.max_len,
            counts,
            loops: census.loops.iter().map(loop_file).collect(),
        }
    }
}

fn loop_file(l: &RelationLoop) -> LoopFile {
    LoopFile {
        moves: l.moves.iter().map(|m| m.to_string()).collect(),
        class: l.class.name().to_string(),
        support: l.support.clone(),
    }
}

/// Diagram document used by `render`; labels are optional.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChordDiagramFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub genus: usize,
    pub chords: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl ChordDiagramFile {
    pub fn from_diagram(d: &ChordDiagram) -> ChordDiagramFile {
        let labels = if d.is_labeled() {
            Some(
                (1..=d.slot_count())
                    .map(|s| d.label(s).unwrap().to_text(d.ctx()))
                    .collect(),
            )
        } else {
            None
        };
        ChordDiagramFile {
            schema: SCHEMA_VERSION,
            genus: d.ctx().genus(),
            chords: d.chords(),
            labels,
        }
    }

    pub fn to_diagram(&self) -> Result<ChordDiagram> {
        check_schema(self.schema)?;
        let ctx = GenusContext::new(self.genus)?;
        match &self.labels {
            None => ChordDiagram::from_chords(ctx, &self.chords),
            Some(labels) => {
                let words = labels
                    .iter()
                    .map(|t| Word::parse(t, &ctx))
                    .collect::<Result<Vec<_>>>()?;
                let domain = PolygonDomain::new(ctx, words, &self.chords)?;
                Ok(crate::chord::to_chord_diagram(&domain))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::fan_triangulate;
    use crate::walk::random_walk;

    fn ctx(g: usize) -> GenusContext {
        GenusContext::new(g).unwrap()
    }

    #[test]
    fn domain_file_round_trip() {
        let base = PolygonDomain::standard(ctx(2));
        let (p, _) = random_walk(&base, 12, 9).unwrap();
        let file = DomainFile::from_domain(&p);
        let json = serde_json::to_string_pretty(&file).unwrap();
        let parsed: DomainFile = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_domain().unwrap(), p);
    }

    #[test]
    fn domain_file_without_schema_field_defaults() {
        let json = r#"{"genus":1,"sides":["b1","a1","B1","A1"],"pairing":[[1,3],[2,4]]}"#;
        let parsed: DomainFile = serde_json::from_str(json).unwrap();
        assert!(parsed.to_domain().unwrap().is_standard());
    }

    #[test]
    fn map_file_round_trip() {
        let c = ctx(1);
        let twist = MappingClass::new(
            vec![
                crate::word::word("a1", &c),
                crate::word::word("b1 a1", &c),
            ],
            &c,
        )
        .unwrap();
        let file = MapFile::from_mapping_class(&twist, &c);
        let json = serde_json::to_string(&file).unwrap();
        let parsed: MapFile = serde_json::from_str(&json).unwrap();
        let (map, _) = parsed.to_mapping_class().unwrap();
        assert_eq!(map, twist);
    }

    #[test]
    fn path_file_round_trip() {
        let base = PolygonDomain::standard(ctx(1));
        let (_, path) = random_walk(&base, 6, 1).unwrap();
        let file = PathFile::from_path(&path);
        let json = serde_json::to_string(&file).unwrap();
        let parsed: PathFile = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_path().unwrap(), path);
    }

    #[test]
    fn triangulation_file_round_trip() {
        let t = fan_triangulate(&PolygonDomain::standard(ctx(2))).unwrap();
        let file = TriangulationFile::from_triangulation(&t);
        let json = serde_json::to_string(&file).unwrap();
        let parsed: TriangulationFile = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_triangulation().unwrap(), t);
    }

    #[test]
    fn walk_file_reads_back_as_domain() {
        let base = PolygonDomain::standard(ctx(2));
        let (p, path) = random_walk(&base, 10, 4).unwrap();
        let file = WalkFile::new(&p, &path, 4);
        let json = serde_json::to_string(&file).unwrap();
        let as_domain: DomainFile = serde_json::from_str(&json).unwrap();
        assert_eq!(as_domain.to_domain().unwrap(), p);
    }

    #[test]
    fn bad_schema_is_rejected() {
        let json = r#"{"schema":9,"genus":1,"sides":["b1","a1","B1","A1"],"pairing":[[1,3],[2,4]]}"#;
        let parsed: DomainFile = serde_json::from_str(json).unwrap();
        assert!(matches!(
            parsed.to_domain(),
            Err(Error::MalformedFile(_))
        ));
    }

    #[test]
    fn chord_diagram_file_round_trip() {
        let p = PolygonDomain::standard(ctx(1));
        let d = crate::chord::to_chord_diagram(&p);
        let file = ChordDiagramFile::from_diagram(&d);
        let json = serde_json::to_string(&file).unwrap();
        let parsed: ChordDiagramFile = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_diagram().unwrap(), d);
    }
}
