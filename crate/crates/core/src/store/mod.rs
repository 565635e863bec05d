//! Exercise packs: the JSON file format, validation, the embedded packs
//! and self-tests.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dictation::{check_dictation, DictationExercise};
use crate::grid::{check_grid_formula, GridCoord, GridExercise, SquareSet, DEFAULT_DEPTH_CAP};
use crate::logic::{parse, print, Dialect, Formula, ParseError};
use crate::prover::{prove_implication, ProverBounds};
use crate::verdict::Category;

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("cannot read {path}: {source}")]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{location}: {reason}")]
    Schema { location: String, reason: String },
    #[error("{location}: formula {text:?} does not parse: {source}")]
    Formula {
        location: String,
        text: String,
        source: ParseError,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Exercise {
    Dictation(DictationExercise),
    Grid(GridExercise),
}

impl Exercise {
    pub fn id(&self) -> &str {
        match self {
            Exercise::Dictation(d) => &d.id,
            Exercise::Grid(g) => &g.id,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Exercise::Dictation(_) => "dictation",
            Exercise::Grid(_) => "grid",
        }
    }
}

/// An immutable collection of exercises with unique ids.
#[derive(Clone, Debug, PartialEq)]
pub struct ExercisePack {
    pub name: String,
    pub version: String,
    pub exercises: Vec<Exercise>,
}

impl ExercisePack {
    pub fn get(&self, id: &str) -> Option<&Exercise> {
        self.exercises.iter().find(|e| e.id() == id)
    }

    pub fn len(&self) -> usize {
        self.exercises.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exercises.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PackFile {
    name: String,
    version: String,
    exercises: Vec<EntryFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum EntryFile {
    Dictation {
        id: String,
        prompt: String,
        accepted: Vec<String>,
        symbols: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gamma_limit: Option<u32>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        theory_extras: Vec<String>,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        experimental: bool,
    },
    Grid {
        id: String,
        description: String,
        constants: BTreeMap<String, GridCoord>,
        target: SquareSet,
        reference_solution: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        depth_cap: Option<usize>,
    },
}

fn schema(location: impl Into<String>, reason: impl Into<String>) -> StoreError {
    StoreError::Schema {
        location: location.into(),
        reason: reason.into(),
    }
}

fn formula(text: &str, dialect: Dialect, location: String) -> Result<Formula, StoreError> {
    parse(text, dialect).map_err(|source| StoreError::Formula {
        location,
        text: text.to_string(),
        source,
    })
}

fn letter(s: &str, location: &str) -> Result<char, StoreError> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c.is_ascii_lowercase() => Ok(c),
        _ => Err(schema(
            location,
            format!("{s:?} is not a single lowercase letter"),
        )),
    }
}

#[allow(clippy::too_many_arguments)]
fn dictation_entry(
    at: &str,
    id: String,
    prompt: String,
    accepted: Vec<String>,
    symbols: Vec<String>,
    gamma_limit: Option<u32>,
    theory_extras: Vec<String>,
    experimental: bool,
) -> Result<DictationExercise, StoreError> {
    if accepted.is_empty() {
        return Err(schema(
            format!("{at}.accepted"),
            "at least one formula is required",
        ));
    }
    let required_symbols = symbols
        .iter()
        .enumerate()
        .map(|(i, s)| letter(s, &format!("{at}.symbols[{i}]")))
        .collect::<Result<BTreeSet<char>, _>>()?;
    let mut parsed = Vec::with_capacity(accepted.len());
    for (i, text) in accepted.iter().enumerate() {
        let loc = format!("{at}.accepted[{i}]");
        let f = formula(text, Dialect::Dictation, loc.clone())?;
        let found = f.free_symbols();
        if found != required_symbols {
            let found: String = found.into_iter().collect();
            let want: String = required_symbols.iter().collect();
            return Err(schema(
                loc,
                format!("free symbols {{{found}}} differ from the declared {{{want}}}"),
            ));
        }
        parsed.push(f);
    }
    let theory_extras = theory_extras
        .iter()
        .enumerate()
        .map(|(i, t)| formula(t, Dialect::Dictation, format!("{at}.theory_extras[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let bounds = match gamma_limit {
        Some(0) => return Err(schema(format!("{at}.gamma_limit"), "must be at least 1")),
        Some(g) => ProverBounds::with_gamma_limit(g),
        None => ProverBounds::default(),
    };
    Ok(DictationExercise {
        id,
        prompt,
        accepted: parsed,
        required_symbols,
        bounds,
        theory_extras,
        experimental,
    })
}

fn grid_entry(
    at: &str,
    id: String,
    description: String,
    constants: BTreeMap<String, GridCoord>,
    target: SquareSet,
    reference_solution: String,
    depth_cap: Option<usize>,
) -> Result<GridExercise, StoreError> {
    let mut named = BTreeMap::new();
    for (name, sq) in constants {
        let c = letter(&name, &format!("{at}.constants"))?;
        named.insert(c, sq);
    }
    match named.get(&'u') {
        None => {
            named.insert('u', GridCoord::CENTER);
        }
        Some(sq) if *sq != GridCoord::CENTER => {
            return Err(schema(
                format!("{at}.constants.u"),
                "u must be the center square [0,0]",
            ))
        }
        Some(_) => {}
    }
    let reference = formula(
        &reference_solution,
        Dialect::Grid,
        format!("{at}.reference_solution"),
    )?;
    Ok(GridExercise {
        id,
        description,
        constants: named,
        target,
        depth_cap: depth_cap.unwrap_or(DEFAULT_DEPTH_CAP),
        reference_solution: Some(reference),
    })
}

/// Parses and validates a pack from its JSON text.
pub fn parse_pack(json: &str) -> Result<ExercisePack, StoreError> {
    let file: PackFile = serde_json::from_str(json).map_err(|e| {
        schema(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    if file.version.trim().is_empty() {
        return Err(schema("version", "must not be empty"));
    }
    let mut seen = HashSet::new();
    let mut exercises = Vec::with_capacity(file.exercises.len());
    for (i, entry) in file.exercises.into_iter().enumerate() {
        let at = format!("exercises[{i}]");
        let ex = match entry {
            EntryFile::Dictation {
                id,
                prompt,
                accepted,
                symbols,
                gamma_limit,
                theory_extras,
                experimental,
            } => Exercise::Dictation(dictation_entry(
                &at,
                id,
                prompt,
                accepted,
                symbols,
                gamma_limit,
                theory_extras,
                experimental,
            )?),
            EntryFile::Grid {
                id,
                description,
                constants,
                target,
                reference_solution,
                depth_cap,
            } => Exercise::Grid(grid_entry(
                &at,
                id,
                description,
                constants,
                target,
                reference_solution,
                depth_cap,
            )?),
        };
        if ex.id().is_empty() {
            return Err(schema(format!("{at}.id"), "must not be empty"));
        }
        if !seen.insert(ex.id().to_string()) {
            return Err(schema(
                format!("{at}.id"),
                format!("duplicate id {:?}", ex.id()),
            ));
        }
        exercises.push(ex);
    }
    Ok(ExercisePack {
        name: file.name,
        version: file.version,
        exercises,
    })
}

pub fn load_pack(path: impl AsRef<Path>) -> Result<ExercisePack, StoreError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| StoreError::File {
        path: path.to_path_buf(),
        source,
    })?;
    parse_pack(&text)
}

fn printed(f: &Formula, dialect: Dialect) -> String {
    print(f, dialect).expect("pack formulas are in their exercise's dialect")
}

/// Serializes a pack to the file format. Grid exercises without a
/// reference solution cannot be represented and are an error.
pub fn pack_to_json(pack: &ExercisePack) -> Result<String, StoreError> {
    let mut entries = Vec::with_capacity(pack.exercises.len());
    for (i, ex) in pack.exercises.iter().enumerate() {
        entries.push(match ex {
            Exercise::Dictation(d) => EntryFile::Dictation {
                id: d.id.clone(),
                prompt: d.prompt.clone(),
                accepted: d
                    .accepted
                    .iter()
                    .map(|f| printed(f, Dialect::Dictation))
                    .collect(),
                symbols: d.required_symbols.iter().map(|c| c.to_string()).collect(),
                gamma_limit: (d.bounds.gamma_limit != ProverBounds::default().gamma_limit)
                    .then_some(d.bounds.gamma_limit),
                theory_extras: d
                    .theory_extras
                    .iter()
                    .map(|f| printed(f, Dialect::Dictation))
                    .collect(),
                experimental: d.experimental,
            },
            Exercise::Grid(g) => EntryFile::Grid {
                id: g.id.clone(),
                description: g.description.clone(),
                constants: g
                    .constants
                    .iter()
                    .map(|(c, sq)| (c.to_string(), *sq))
                    .collect(),
                target: g.target,
                reference_solution: g
                    .reference_solution
                    .as_ref()
                    .map(|f| printed(f, Dialect::Grid))
                    .ok_or_else(|| {
                        schema(format!("exercises[{i}].reference_solution"), "missing")
                    })?,
                depth_cap: (g.depth_cap != DEFAULT_DEPTH_CAP).then_some(g.depth_cap),
            },
        });
    }
    let file = PackFile {
        name: pack.name.clone(),
        version: pack.version.clone(),
        exercises: entries,
    };
    Ok(serde_json::to_string_pretty(&file).expect("pack file serializes"))
}

pub fn save_pack(pack: &ExercisePack, path: impl AsRef<Path>) -> Result<(), StoreError> {
    let path = path.as_ref();
    let json = pack_to_json(pack)?;
    std::fs::write(path, json).map_err(|source| StoreError::File {
        path: path.to_path_buf(),
        source,
    })
}

const DICTATION_PACK: &str = include_str!("../../packs/dictation.json");
const GRID_PACK: &str = include_str!("../../packs/grid.json");

/// The embedded dictation pack followed by the embedded grid pack.
pub fn builtin_packs() -> Vec<ExercisePack> {
    [DICTATION_PACK, GRID_PACK]
        .iter()
        .map(|text| parse_pack(text).expect("embedded packs are valid"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestEntry {
    pub id: String,
    pub passed: bool,
    /// Empty when passed.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub pack: String,
    pub entries: Vec<SelftestEntry>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

fn selftest_dictation(d: &DictationExercise) -> Vec<String> {
    let mut failures = Vec::new();
    for f in &d.accepted {
        let text = printed(f, Dialect::Dictation);
        let v = check_dictation(d, &text);
        if v.category != Category::Correct {
            failures.push(format!("accepted {text} grades {}", v.category));
        }
    }
    let theory = d.theory();
    for (i, a) in d.accepted.iter().enumerate() {
        for b in &d.accepted[i + 1..] {
            for (x, y) in [(a, b), (b, a)] {
                let proved = prove_implication(x, y, &d.bounds, &theory)
                    .map(|o| o.is_proved())
                    .unwrap_or(false);
                if !proved {
                    failures.push(format!(
                        "{} does not prove {}",
                        printed(x, Dialect::Dictation),
                        printed(y, Dialect::Dictation)
                    ));
                }
            }
        }
    }
    failures
}

fn selftest_grid(g: &GridExercise) -> Vec<String> {
    let Some(reference) = &g.reference_solution else {
        return vec!["no reference solution".to_string()];
    };
    let v = check_grid_formula(g, reference);
    if v.category == Category::Correct {
        return Vec::new();
    }
    let mut msg = format!("reference solution grades {}", v.category);
    if let Some(c) = v.coloring {
        msg.push_str(&format!(
            " ({} squares missing, {} extra)",
            c.yellow.len(),
            c.red.len()
        ));
    } else if let Some(r) = v.rejection {
        msg.push_str(&format!(": {r}"));
    }
    vec![msg]
}

/// Re-grades every stored solution; a pack passes when each one is Correct
/// and accepted dictation forms are pairwise provably equivalent.
pub fn selftest(pack: &ExercisePack) -> SelftestReport {
    let entries = pack
        .exercises
        .iter()
        .map(|ex| {
            let failures = match ex {
                Exercise::Dictation(d) => selftest_dictation(d),
                Exercise::Grid(g) => selftest_grid(g),
            };
            SelftestEntry {
                id: ex.id().to_string(),
                passed: failures.is_empty(),
                failures,
            }
        })
        .collect();
    SelftestReport {
        pack: pack.name.clone(),
        entries,
    }
}
