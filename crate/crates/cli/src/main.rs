use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use isonorm_core::census::{self, word::ArcWord};
use isonorm_core::format::{self, MapDocument};
use isonorm_core::homology::{homology_basis, intersection_form, HomologyBasis};
use isonorm_core::moves::{self, UnionOutcome};
use isonorm_core::polytope::{convex_hull, LatticePolytope, NormOracle};
use isonorm_core::{coorientation, torus, CombinatorialMap};

#[derive(Parser)]
#[command(name = "isonorm", version, about = "Intersection norms of curve collections on surfaces")]
struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyFormat {
    Text,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Check a map file and report its structure or every violation.
    Validate { map: PathBuf },
    /// List the faces of a map.
    Faces { map: PathBuf },
    /// Eulerian co-orientation classes and their hull.
    Dualball {
        map: PathBuf,
        /// File of `walk:` lines to use as homology basis.
        #[arg(long)]
        basis: Option<PathBuf>,
        /// List every class, not only hull vertices.
        #[arg(long)]
        classes: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: PolyFormat,
    },
    /// Norm of a homology class given by its basis coordinates.
    Norm {
        map: PathBuf,
        #[arg(required = true, allow_negative_numbers = true)]
        class: Vec<i64>,
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Smooth one vertex both ways and compare class sets.
    Smooth {
        map: PathBuf,
        vertex: usize,
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Smooth vertices joining distinct faces until none are left; prints
    /// the resulting map.
    Reduce { map: PathBuf },
    /// Parity of the norm on integer classes.
    Parity {
        map: PathBuf,
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Torus collection whose dual ball is a given symmetric polygon.
    RealizeTorus {
        polygon: PathBuf,
        /// Print the collection's map instead of its curve list.
        #[arg(long)]
        emit_map: bool,
    },
    /// One-faced genus-2 collections up to isomorphism.
    Census {
        #[arg(long, default_value_t = 2)]
        twist_bound: i64,
        /// Also enumerate every one-faced map on three vertices.
        #[arg(long)]
        exhaustive_maps: bool,
        /// Write `census<i>.map` and `census<i>.poly` here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Check that no census dual ball is in P8.
    VerifyTheorem {
        #[arg(long, default_value_t = 2)]
        twist_bound: i64,
    },
    /// Decide membership of a polytope in P8.
    CheckP8 { polytope: PathBuf },
    /// Map of an arc word such as `a1 a2^-1 b1^-1 b2 eta`.
    Word {
        word: String,
        #[arg(long)]
        emit_map: bool,
    },
}

/// Unreadable or malformed input; exits with status 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input<T, E: Into<anyhow::Error>>(r: std::result::Result<T, E>) -> Result<T> {
    r.map_err(|e| InputError(e.into()).into())
}

fn read(path: &Path) -> Result<String> {
    input(std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())))
}

fn load_map(path: &Path, basis: Option<&Path>) -> Result<MapDocument> {
    let mut text = read(path)?;
    if let Some(b) = basis {
        text.push('\n');
        text.push_str(&read(b)?);
    }
    input(format::parse_map(&text).with_context(|| format!("parsing {}", path.display())))
}

fn load_polytope(path: &Path) -> Result<LatticePolytope> {
    let pts = input(
        format::parse_vectors(&read(path)?).with_context(|| format!("parsing {}", path.display())),
    )?;
    Ok(convex_hull(&pts)?)
}

/// The file's walks if it has any, otherwise the computed basis.
fn basis_of(doc: &MapDocument) -> Result<(HomologyBasis, &'static str)> {
    if doc.map.genus() == 0 {
        bail!("map has genus 0: no homology classes to measure (a filling collection on a surface of positive genus is required)");
    }
    if doc.walks.is_empty() {
        Ok((homology_basis(&doc.map)?, "computed"))
    } else {
        let basis = HomologyBasis::from_walks(&doc.map, doc.walks.clone())
            .context("walks given in the file are not a homology basis")?;
        Ok((basis, "file"))
    }
}

fn vectors_json(v: impl IntoIterator<Item = impl AsRef<[i64]>>) -> Value {
    Value::from(v.into_iter().map(|x| x.as_ref().to_vec()).collect::<Vec<_>>())
}

fn map_summary(map: &CombinatorialMap) -> Value {
    json!({
        "vertices": map.vertex_count(),
        "edges": map.edge_count(),
        "faces": map.faces().len(),
        "genus": map.genus(),
        "curves": map.curves().len(),
    })
}

fn summary_line(map: &CombinatorialMap) -> String {
    format!(
        "V={} E={} F={} genus={} curves={}",
        map.vertex_count(),
        map.edge_count(),
        map.faces().len(),
        map.genus(),
        map.curves().len()
    )
}

struct Output {
    json: bool,
}

impl Output {
    fn emit(&self, text: impl fmt::Display, value: Value) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        } else {
            print!("{text}");
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let out = Output { json: cli.json };
    match cli.command {
        Command::Validate { map } => {
            let doc = input(format::parse_raw_map(&read(&map)?))?;
            let diags = doc.raw.validate();
            if diags.is_empty() {
                let (m, _) = CombinatorialMap::from_raw(&doc.raw)?;
                out.emit(
                    format!("valid: {}\n", summary_line(&m)),
                    json!({"valid": true, "map": map_summary(&m)}),
                );
                Ok(ExitCode::SUCCESS)
            } else {
                let msgs: Vec<String> = diags.iter().map(|d| d.to_string()).collect();
                let text: String = msgs.iter().map(|m| format!("invalid: {m}\n")).collect();
                out.emit(text, json!({"valid": false, "diagnostics": msgs}));
                Ok(ExitCode::from(1))
            }
        }
        Command::Faces { map } => {
            let doc = load_map(&map, None)?;
            let faces = doc.map.faces();
            let mut text = format!("{} faces\n", faces.len());
            let mut list = Vec::new();
            for (i, f) in faces.faces.iter().enumerate() {
                let ids: Vec<String> = f.iter().map(|h| h.0.to_string()).collect();
                text += &format!("f{i} ({}): {}\n", f.len(), ids.join(" "));
                list.push(f.iter().map(|h| h.0).collect::<Vec<_>>());
            }
            out.emit(text, json!({"faces": list}));
            Ok(ExitCode::SUCCESS)
        }
        Command::Dualball {
            map,
            basis,
            classes,
            format: fmt,
        } => {
            let doc = load_map(&map, basis.as_deref())?;
            let (b, source) = basis_of(&doc)?;
            let set = coorientation::eulco_classes(&doc.map, &b)?;
            let pts: Vec<Vec<i64>> = set.iter().cloned().collect();
            let ball = convex_hull(&pts)?;
            if fmt == PolyFormat::Off && !cli.json {
                print!("{}", format::write_off(&ball)?);
                return Ok(ExitCode::SUCCESS);
            }
            let comments = vec![
                format!("dual ball of {}", map.display()),
                format!("basis: {source}"),
                format!("{} classes, {} vertices", set.len(), ball.vertex_count()),
            ];
            let text = if classes {
                format::write_vectors(&pts, &comments)
            } else {
                format::write_vectors(ball.vertices(), &comments)
            };
            out.emit(
                text,
                json!({
                    "basis": source,
                    "walks": b.walks.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    "classes": vectors_json(&pts),
                    "vertices": vectors_json(ball.vertices()),
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Norm { map, class, basis } => {
            let doc = load_map(&map, basis.as_deref())?;
            let (b, _) = basis_of(&doc)?;
            if class.len() != b.rank() {
                bail!("class has {} coordinates but the basis has {}", class.len(), b.rank());
            }
            let set = coorientation::eulco_classes(&doc.map, &b)?;
            let ball = convex_hull(&set.into_iter().collect::<Vec<_>>())?;
            let n = NormOracle::new(ball)?.norm(&class)?;
            out.emit(format!("{n}\n"), json!({"class": class, "norm": n}));
            Ok(ExitCode::SUCCESS)
        }
        Command::Smooth { map, vertex, basis } => {
            let doc = load_map(&map, basis.as_deref())?;
            let sm = moves::smooth(&doc.map, vertex)?;
            let mut text = String::new();
            let mut kids = Vec::new();
            for c in &sm.children {
                let line = if c.degenerate {
                    "degenerate (a loop without vertices closed off)".to_string()
                } else if c.map.vertex_count() == 0 {
                    "no vertices left".to_string()
                } else {
                    summary_line(&c.map)
                };
                text += &format!("{:?}: {line}\n", c.reconnection);
                kids.push(json!({
                    "reconnection": format!("{:?}", c.reconnection),
                    "degenerate": c.degenerate,
                    "map": (!c.degenerate && c.map.vertex_count() > 0).then(|| map_summary(&c.map)),
                }));
            }
            let union = if doc.map.genus() > 0 {
                let (b, _) = basis_of(&doc)?;
                match moves::eulco_union_check(&doc.map, vertex, &b)? {
                    UnionOutcome::Inapplicable => {
                        text += "union check: not applicable\n";
                        Value::Null
                    }
                    UnionOutcome::Checked(r) => {
                        text += &format!(
                            "union check: classes {}, hulls {}, children included {}\n",
                            if r.union_equal { "equal" } else { "differ" },
                            if r.hull_equal { "equal" } else { "differ" },
                            r.children_included
                        );
                        json!({
                            "union_equal": r.union_equal,
                            "hull_equal": r.hull_equal,
                            "children_included": r.children_included,
                        })
                    }
                }
            } else {
                Value::Null
            };
            out.emit(text, json!({"vertex": vertex, "children": kids, "union": union}));
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { map } => {
            let doc = load_map(&map, None)?;
            let red = moves::reduce(&doc.map);
            let walks: Vec<_> = doc.walks.iter().filter_map(|w| red.transport(w)).collect();
            let mut text = String::new();
            for (i, s) in red.steps.iter().enumerate() {
                text += &format!(
                    "# step {}: v{} {:?}, faces {} -> {}\n",
                    i + 1,
                    s.vertex,
                    s.reconnection,
                    s.faces_before,
                    s.faces_after
                );
            }
            text += &format::write_map(&red.map, &walks);
            let steps: Vec<Value> = red
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "vertex": s.vertex,
                        "reconnection": format!("{:?}", s.reconnection),
                        "faces_before": s.faces_before,
                        "faces_after": s.faces_after,
                    })
                })
                .collect();
            out.emit(
                text,
                json!({
                    "steps": steps,
                    "map": format::write_map(&red.map, &walks),
                    "summary": map_summary(&red.map),
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Parity { map, basis } => {
            let doc = load_map(&map, basis.as_deref())?;
            let (b, _) = basis_of(&doc)?;
            let p = match moves::norm_parity(&doc.map, &b)? {
                moves::Parity::Even => "even",
                moves::Parity::Odd => "odd",
            };
            out.emit(format!("{p}\n"), json!({"parity": p}));
            Ok(ExitCode::SUCCESS)
        }
        Command::RealizeTorus { polygon, emit_map } => {
            let poly = load_polytope(&polygon)?;
            let col = torus::realize(&poly)?;
            if emit_map {
                let Some(cm) = col.to_map()? else {
                    bail!("a single family of parallel curves has no crossings to form a map");
                };
                let text = format::write_map(&cm.map, &[]);
                out.emit(&text, json!({"map": text, "summary": map_summary(&cm.map)}));
                return Ok(ExitCode::SUCCESS);
            }
            let mut text = String::new();
            let mut list = Vec::new();
            for c in &col.curves {
                text += &format!("({}, {}) x {}\n", c.class[0], c.class[1], c.multiplicity);
                list.push(json!({"class": c.class, "multiplicity": c.multiplicity}));
            }
            out.emit(text, json!({"curves": list}));
            Ok(ExitCode::SUCCESS)
        }
        Command::Census {
            twist_bound,
            exhaustive_maps,
            out_dir,
        } => {
            let c = census::census(twist_bound)?;
            let mut text = format!(
                "twist bound {}: {} words, {} with 3 crossings, {} one-faced\n{} classes ({} up to orientation-preserving isomorphism)\n",
                c.twist_bound,
                c.words_examined,
                c.three_crossing_words,
                c.one_faced_words,
                c.classes.len(),
                c.oriented_class_count
            );
            let mut classes = Vec::new();
            for (i, k) in c.classes.iter().enumerate() {
                text += &format!(
                    "census{}: {}  curves={} ball vertices={} words={}{}\n",
                    i + 1,
                    k.word,
                    k.curve_count,
                    k.ball.vertex_count(),
                    k.words_found,
                    if k.chiral { " chiral" } else { "" }
                );
                classes.push(json!({
                    "word": k.word.to_string(),
                    "curves": k.curve_count,
                    "words_found": k.words_found,
                    "chiral": k.chiral,
                    "vertices": vectors_json(k.ball.vertices()),
                }));
                if let Some(dir) = &out_dir {
                    std::fs::create_dir_all(dir)?;
                    let map_text = format!(
                        "# {}\n{}",
                        k.word,
                        format::write_map(&k.map, &k.basis.walks)
                    );
                    std::fs::write(dir.join(format!("census{}.map", i + 1)), map_text)?;
                    let comments = vec![
                        format!("dual ball of {}", k.word),
                        format!("{} vertices", k.ball.vertex_count()),
                    ];
                    std::fs::write(
                        dir.join(format!("census{}.poly", i + 1)),
                        format::write_vectors(k.ball.vertices(), &comments),
                    )?;
                }
            }
            let mut doc = json!({
                "twist_bound": c.twist_bound,
                "words_examined": c.words_examined,
                "three_crossing_words": c.three_crossing_words,
                "one_faced_words": c.one_faced_words,
                "oriented_class_count": c.oriented_class_count,
                "classes": classes,
            });
            if exhaustive_maps {
                let ex = census::exhaustive_unicellular_maps();
                let found: Vec<Option<usize>> = c
                    .classes
                    .iter()
                    .map(|k| ex.one_faced.iter().position(|m| m.isomorphic(&k.map, true)))
                    .collect();
                text += &format!(
                    "exhaustive: {} matchings, {} connected, {} one-faced classes ({} oriented); census classes at {:?}\n",
                    ex.matchings, ex.connected, ex.one_faced.len(), ex.one_faced_oriented, found
                );
                doc["exhaustive"] = json!({
                    "matchings": ex.matchings,
                    "connected": ex.connected,
                    "one_faced": ex.one_faced.len(),
                    "one_faced_oriented": ex.one_faced_oriented,
                    "census_positions": found,
                });
            }
            out.emit(text, doc);
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyTheorem { twist_bound } => {
            let r = census::verify_main_theorem(twist_bound)?;
            let balls: Vec<Value> = r
                .balls
                .iter()
                .map(|b| {
                    json!({
                        "word": b.word.to_string(),
                        "vertices": b.vertex_count,
                        "in_cube": b.in_cube,
                        "is_p8": b.is_p8,
                    })
                })
                .collect();
            out.emit(
                format!("{r}\n"),
                json!({
                    "classes": r.class_count,
                    "balls": balls,
                    "intro_is_p8": r.intro_is_p8,
                    "intro_among_balls": r.intro_among_balls,
                    "matches_published_counts": r.matches_published_counts(),
                    "pass": r.theorem_holds(),
                }),
            );
            Ok(if r.theorem_holds() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::CheckP8 { polytope } => {
            let p = load_polytope(&polytope)?;
            let member = p.is_p8()?;
            let text = if member {
                "member of P8\n".to_string()
            } else {
                let in_cube = p.vertices().iter().flatten().all(|x| x.abs() <= 1);
                format!(
                    "not a member of P8: {} vertices, dimension {}, symmetric {}, in cube {}\n",
                    p.vertex_count(),
                    p.dimension(),
                    p.is_symmetric(),
                    in_cube
                )
            };
            out.emit(
                text,
                json!({
                    "member": member,
                    "vertices": p.vertex_count(),
                    "dimension": p.dimension(),
                    "symmetric": p.is_symmetric(),
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Word { word, emit_map } => {
            let w: ArcWord = input(word.parse::<ArcWord>())?;
            let (wm, b, set, ball) = census::word_ball(&w)?;
            if emit_map {
                let text = format!("# {w}\n{}", format::write_map(&wm.map, &b.walks));
                out.emit(&text, json!({"map": text}));
                return Ok(ExitCode::SUCCESS);
            }
            let text = format!(
                "{w}\ncrossings {}: {}\nintersection form {:?}\n{} classes, {} ball vertices\n",
                census::self_intersection(&w),
                summary_line(&wm.map),
                intersection_form(&wm.map, &b),
                set.len(),
                ball.vertex_count()
            );
            out.emit(
                text,
                json!({
                    "word": w.to_string(),
                    "map": map_summary(&wm.map),
                    "vertices": vectors_json(ball.vertices()),
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("ISONORM_THREADS").ok().and_then(|s| s.parse().ok()) {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<InputError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
