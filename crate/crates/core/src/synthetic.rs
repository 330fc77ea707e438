//! Seeded generator for a corpus with a known field network.
//!
//! The planted level-1 network has three linked hub fields, each with a
//! dense core group and bridge fields that lead to fans of peripheral fields. Planted edges are
//! realised by several authors each; noise authors add weight-1 edges that a
//! mean threshold removes. Peripheral fields appear only on background
//! (non-focal) papers.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Author, FieldRef, PaperRecord};

pub const FOCAL_YEAR: i32 = 2019;
pub const BACKGROUND_YEARS: (i32, i32) = (2016, 2018);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Hub,
    Core,
    Bridge,
    Peripheral,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedField {
    pub id: String,
    pub name: String,
    pub discipline: &'static str,
    pub kind: Kind,
    /// Hub the field is organised around; for peripheral fields, their bridge.
    pub anchor: usize,
    pub vocabulary: &'static [&'static str],
}

const DISCIPLINES: &[(&str, &str)] = &[
    ("d-eng", "Engineering"),
    ("d-phys", "Physics"),
    ("d-chem", "Chemistry"),
    ("d-env", "Environmental science"),
    ("d-cs", "Computer science"),
    ("d-med", "Medicine"),
];

type FieldRow = (
    &'static str,
    &'static str,
    &'static str,
    Kind,
    usize,
    &'static [&'static str],
);

const FIELDS: &[FieldRow] = &[
    (
        "nuclear-engineering",
        "Nuclear engineering",
        "d-eng",
        Kind::Hub,
        0,
        &["reactor", "plant", "design", "safety"],
    ),
    (
        "materials-science",
        "Materials science",
        "d-chem",
        Kind::Hub,
        1,
        &["material", "alloy", "microstructure"],
    ),
    (
        "nuclear-physics",
        "Nuclear physics",
        "d-phys",
        Kind::Hub,
        2,
        &["nucleus", "cross", "section", "decay"],
    ),
    (
        "reactor-physics",
        "Reactor physics",
        "d-phys",
        Kind::Core,
        0,
        &["neutron", "flux", "criticality"],
    ),
    (
        "thermal-hydraulics",
        "Thermal hydraulics",
        "d-eng",
        Kind::Core,
        0,
        &["coolant", "boiling", "heat"],
    ),
    (
        "nuclear-safety",
        "Nuclear safety",
        "d-eng",
        Kind::Core,
        0,
        &["accident", "severe", "containment"],
    ),
    (
        "nuclear-fuel",
        "Nuclear fuel",
        "d-eng",
        Kind::Core,
        1,
        &["pellet", "cladding", "burnup"],
    ),
    (
        "corrosion",
        "Corrosion science",
        "d-chem",
        Kind::Core,
        1,
        &["corrosion", "oxide", "water"],
    ),
    (
        "metallurgy",
        "Metallurgy",
        "d-chem",
        Kind::Core,
        1,
        &["steel", "creep", "weld"],
    ),
    (
        "radiation-shielding",
        "Radiation shielding",
        "d-phys",
        Kind::Core,
        2,
        &["dose", "attenuation", "shield"],
    ),
    (
        "fusion-energy",
        "Fusion energy",
        "d-phys",
        Kind::Core,
        2,
        &["plasma", "tokamak", "confinement"],
    ),
    (
        "nuclear-data",
        "Nuclear data",
        "d-phys",
        Kind::Core,
        2,
        &["evaluation", "library", "covariance"],
    ),
    (
        "computational-physics",
        "Computational physics",
        "d-cs",
        Kind::Bridge,
        0,
        &["simulation", "solver", "mesh"],
    ),
    (
        "control-engineering",
        "Control engineering",
        "d-eng",
        Kind::Bridge,
        0,
        &["controller", "feedback", "instrumentation"],
    ),
    (
        "radiochemistry",
        "Radiochemistry",
        "d-chem",
        Kind::Bridge,
        1,
        &["isotope", "separation", "actinide"],
    ),
    (
        "waste-management",
        "Radioactive waste management",
        "d-env",
        Kind::Bridge,
        1,
        &["repository", "disposal", "canister"],
    ),
    (
        "health-physics",
        "Health physics",
        "d-med",
        Kind::Bridge,
        2,
        &["exposure", "dosimetry", "worker"],
    ),
    (
        "energy-systems",
        "Energy systems",
        "d-env",
        Kind::Bridge,
        2,
        &["grid", "demand", "scenario"],
    ),
    (
        "machine-learning",
        "Machine learning",
        "d-cs",
        Kind::Peripheral,
        12,
        &["learning", "training", "classifier"],
    ),
    (
        "parallel-computing",
        "Parallel computing",
        "d-cs",
        Kind::Peripheral,
        12,
        &["parallel", "scaling", "gpu"],
    ),
    (
        "numerical-analysis",
        "Numerical analysis",
        "d-cs",
        Kind::Peripheral,
        12,
        &["discretization", "convergence", "error"],
    ),
    (
        "uncertainty-quantification",
        "Uncertainty quantification",
        "d-cs",
        Kind::Peripheral,
        12,
        &["uncertainty", "sampling", "sensitivity"],
    ),
    (
        "robotics",
        "Robotics",
        "d-eng",
        Kind::Peripheral,
        13,
        &["robot", "manipulator", "remote"],
    ),
    (
        "signal-processing",
        "Signal processing",
        "d-eng",
        Kind::Peripheral,
        13,
        &["signal", "noise", "filter"],
    ),
    (
        "cyber-security",
        "Cyber security",
        "d-cs",
        Kind::Peripheral,
        13,
        &["cyber", "attack", "intrusion"],
    ),
    (
        "analytical-chemistry",
        "Analytical chemistry",
        "d-chem",
        Kind::Peripheral,
        14,
        &["spectrometry", "assay", "detection"],
    ),
    (
        "electrochemistry",
        "Electrochemistry",
        "d-chem",
        Kind::Peripheral,
        14,
        &["electrode", "molten", "salt"],
    ),
    (
        "solvent-extraction",
        "Solvent extraction",
        "d-chem",
        Kind::Peripheral,
        14,
        &["solvent", "ligand", "extraction"],
    ),
    (
        "geochemistry",
        "Geochemistry",
        "d-chem",
        Kind::Peripheral,
        15,
        &["groundwater", "mineral", "sorption"],
    ),
    (
        "hydrogeology",
        "Hydrogeology",
        "d-env",
        Kind::Peripheral,
        15,
        &["aquifer", "flow", "permeability"],
    ),
    (
        "environmental-monitoring",
        "Environmental monitoring",
        "d-env",
        Kind::Peripheral,
        15,
        &["monitoring", "airborne", "sampling"],
    ),
    (
        "epidemiology",
        "Epidemiology",
        "d-med",
        Kind::Peripheral,
        16,
        &["cohort", "incidence", "cancer"],
    ),
    (
        "radiobiology",
        "Radiobiology",
        "d-med",
        Kind::Peripheral,
        16,
        &["cell", "dna", "damage"],
    ),
    (
        "medical-imaging",
        "Medical imaging",
        "d-med",
        Kind::Peripheral,
        16,
        &["imaging", "tomography", "scan"],
    ),
    (
        "emergency-response",
        "Emergency response",
        "d-med",
        Kind::Peripheral,
        16,
        &["evacuation", "emergency", "response"],
    ),
    (
        "energy-economics",
        "Energy economics",
        "d-env",
        Kind::Peripheral,
        17,
        &["cost", "market", "levelized"],
    ),
    (
        "renewable-energy",
        "Renewable energy",
        "d-env",
        Kind::Peripheral,
        17,
        &["wind", "solar", "intermittent"],
    ),
    (
        "climate-modelling",
        "Climate modelling",
        "d-env",
        Kind::Peripheral,
        17,
        &["climate", "emissions", "carbon"],
    ),
];

const HUBS: usize = 3;

/// Level-2 subfields, `(id, name, parent position)`.
const SUBFIELDS: &[(&str, &str, usize)] = &[
    ("light-water-reactors", "Light water reactors", 0),
    ("small-modular-reactors", "Small modular reactors", 0),
    ("radiation-damage", "Radiation damage", 1),
    ("monte-carlo-transport", "Monte Carlo transport", 3),
    ("critical-heat-flux", "Critical heat flux", 4),
    ("probabilistic-risk", "Probabilistic risk assessment", 5),
    ("accident-tolerant-fuel", "Accident tolerant fuel", 6),
    ("deep-geological-disposal", "Deep geological disposal", 15),
];

const FILLER: &[&str] = &[
    "analysis",
    "model",
    "experimental",
    "approach",
    "performance",
    "method",
    "study",
    "design",
    "the",
    "and",
    "for",
    "with",
    "of",
    "in",
    "on",
    "a",
];

pub fn planted_fields() -> Vec<PlantedField> {
    FIELDS
        .iter()
        .map(
            |&(id, name, discipline, kind, anchor, vocabulary)| PlantedField {
                id: id.to_string(),
                name: name.to_string(),
                discipline,
                kind,
                anchor,
                vocabulary,
            },
        )
        .collect()
}

/// Planted level-1 edges as index pairs into `planted_fields()`, `u < v`.
///
/// Hubs form a triangle. Each core field links to its own hub, the next hub,
/// and the rest of its group; the first core field of each group also links
/// to the first of the next group. Bridges link only to their hub and their
/// peripheral fields.
pub fn planted_edges() -> BTreeSet<(usize, usize)> {
    let mut edges = BTreeSet::new();
    let mut add = |u: usize, v: usize| {
        edges.insert((u.min(v), u.max(v)));
    };
    for h in 0..HUBS {
        add(h, (h + 1) % HUBS);
    }
    let group = |h: usize| -> Vec<usize> {
        (0..FIELDS.len())
            .filter(|&i| FIELDS[i].3 == Kind::Core && FIELDS[i].4 == h)
            .collect()
    };
    for h in 0..HUBS {
        let members = group(h);
        let next = group((h + 1) % HUBS);
        for (i, &c) in members.iter().enumerate() {
            add(h, c);
            add((h + 1) % HUBS, c);
            for &d in &members[i + 1..] {
                add(c, d);
            }
        }
        add(members[0], next[0]);
    }
    for (i, f) in FIELDS.iter().enumerate() {
        match f.3 {
            Kind::Bridge | Kind::Peripheral => add(i, f.4),
            _ => {}
        }
    }
    edges
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticConfig {
    pub seed: u64,
    /// Inclusive range of authors realising each planted edge.
    pub planted_weight: (usize, usize),
    /// Authors linking two random fields once.
    pub noise_authors: usize,
    /// Authors publishing in a single field.
    pub solo_authors: usize,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            planted_weight: (5, 9),
            noise_authors: 160,
            solo_authors: 40,
        }
    }
}

struct Builder {
    rng: ChaCha8Rng,
    fields: Vec<PlantedField>,
    records: Vec<PaperRecord>,
    authors: usize,
}

impl Builder {
    fn author(&mut self) -> Author {
        self.authors += 1;
        Author {
            id: format!("A{:04}", self.authors),
            name: Some(format!("Author {}", self.authors)),
        }
    }

    fn field_refs(&mut self, f: usize) -> Vec<FieldRef> {
        let field = &self.fields[f];
        let (did, dname) = DISCIPLINES
            .iter()
            .find(|d| d.0 == field.discipline)
            .unwrap();
        let mut refs = vec![
            FieldRef {
                id: did.to_string(),
                name: dname.to_string(),
                level: 0,
                parent_ids: Vec::new(),
            },
            FieldRef {
                id: field.id.clone(),
                name: field.name.clone(),
                level: 1,
                parent_ids: vec![did.to_string()],
            },
        ];
        let subs: Vec<_> = SUBFIELDS.iter().filter(|s| s.2 == f).collect();
        if !subs.is_empty() && self.rng.gen_bool(0.6) {
            let s = subs[self.rng.gen_range(0..subs.len())];
            refs.push(FieldRef {
                id: s.0.to_string(),
                name: s.1.to_string(),
                level: 2,
                parent_ids: vec![field.id.clone()],
            });
        }
        refs
    }

    fn words(&mut self, f: usize, n: usize) -> String {
        let vocab = self.fields[f].vocabulary;
        (0..n)
            .map(|_| {
                if self.rng.gen_bool(0.55) {
                    vocab[self.rng.gen_range(0..vocab.len())]
                } else {
                    FILLER[self.rng.gen_range(0..FILLER.len())]
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn paper(&mut self, f: usize, authors: Vec<Author>, focal: bool) {
        let year = if focal {
            FOCAL_YEAR
        } else {
            self.rng.gen_range(BACKGROUND_YEARS.0..=BACKGROUND_YEARS.1)
        };
        let title = {
            let n = self.rng.gen_range(4..=7);
            let mut t = self.words(f, n);
            if let Some(c) = t.get_mut(0..1) {
                c.make_ascii_uppercase();
            }
            t
        };
        let n = self.rng.gen_range(14..=24);
        let abstract_text = Some(format!("{}.", self.words(f, n)));
        let fields = self.field_refs(f);
        self.records.push(PaperRecord {
            id: String::new(),
            title,
            abstract_text,
            year,
            authors,
            fields,
            focal,
        });
    }

    fn is_focal_field(&self, f: usize) -> bool {
        self.fields[f].kind != Kind::Peripheral
    }
}

/// Generates the corpus. Records are shuffled, then numbered `P0001..`.
pub fn generate(config: &SyntheticConfig) -> Vec<PaperRecord> {
    let mut b = Builder {
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        fields: planted_fields(),
        records: Vec::new(),
        authors: 0,
    };
    let n = b.fields.len();
    for (u, v) in planted_edges() {
        let weight = b
            .rng
            .gen_range(config.planted_weight.0..=config.planted_weight.1);
        let group: Vec<Author> = (0..weight).map(|_| b.author()).collect();
        // small teams: each team writes one paper per endpoint
        let mut start = 0;
        while start < group.len() {
            let size = b.rng.gen_range(1..=3).min(group.len() - start);
            let team = group[start..start + size].to_vec();
            start += size;
            // the focal endpoint gates the pair; a peripheral endpoint is always background
            let (focal_u, focal_v) = match (b.is_focal_field(u), b.is_focal_field(v)) {
                (true, true) => {
                    let pre_u = b.rng.gen_bool(0.5);
                    (!pre_u || b.rng.gen_bool(0.5), pre_u)
                }
                (fu, fv) => (fu, fv),
            };
            b.paper(u, team.clone(), focal_u);
            b.paper(v, team, focal_v);
        }
    }
    for _ in 0..config.noise_authors {
        let u = b.rng.gen_range(0..n);
        let v = (u + b.rng.gen_range(1..n)) % n;
        let a = b.author();
        let fu = b.is_focal_field(u) && b.rng.gen_bool(0.5);
        let fv = b.is_focal_field(v) && b.rng.gen_bool(0.5);
        b.paper(u, vec![a.clone()], fu);
        b.paper(v, vec![a], fv);
    }
    for _ in 0..config.solo_authors {
        let f = b.rng.gen_range(0..n);
        let a = b.author();
        let focal = b.is_focal_field(f) && b.rng.gen_bool(0.5);
        b.paper(f, vec![a], focal);
    }
    let mut records = b.records;
    records.shuffle(&mut b.rng);
    for (i, r) in records.iter_mut().enumerate() {
        r.id = format!("P{:04}", i + 1);
    }
    records
}

/// `field id -> kind` for every planted level-1 field.
pub fn kinds() -> BTreeMap<String, Kind> {
    FIELDS.iter().map(|f| (f.0.to_string(), f.3)).collect()
}
