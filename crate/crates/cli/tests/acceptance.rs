//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Runtime bounds are wall-clock limits for the whole criterion.

use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use bsgraph::{
    enumerate_morphisms, lift_path, BsWord, ColouredGraph, Degree, Fixture, GridDegree, Letter,
    Morphism, Path,
};
use serde_json::Value;

const SECOND: Duration = Duration::from_secs(1);
const MINUTE: Duration = Duration::from_secs(60);

type Check = fn() -> Result<(), String>;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .display()
        .to_string()
}

fn load(name: &str) -> Fixture {
    Fixture::load(fixture(name)).expect("fixture loads")
}

fn bsgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bsgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(out: &Output) -> Result<Value, String> {
    serde_json::from_slice(&out.stdout).map_err(|e| format!("stdout is not json: {e}"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exit_code(out: &Output, want: i32) -> Result<(), String> {
    ensure(out.status.code() == Some(want), || {
        format!(
            "exit {:?}, wanted {want}; stdout: {}; stderr: {}",
            out.status.code(),
            text(out).trim(),
            String::from_utf8_lossy(&out.stderr).trim()
        )
    })
}

fn fixture_reproduction() -> Result<(), String> {
    let out = bsgraph(&["check", &fixture("example_E.cg")]);
    exit_code(&out, 0)?;
    let first = text(&out).lines().next().unwrap_or_default().to_owned();
    ensure(
        first == "complete: 2 squares, 2 red-first paths, 2 blue-first paths",
        || format!("check printed {first:?}"),
    )?;
    let fx = load("example_E.cg");
    let c = fx.collection().map_err(|e| e.to_string())?;
    let red: BTreeSet<String> = c
        .squares()
        .iter()
        .map(|s| fx.graph.display_edges(&s.red_first))
        .collect();
    let blue: BTreeSet<String> = c
        .squares()
        .iter()
        .map(|s| fx.graph.display_edges(&s.blue_first))
        .collect();
    ensure(red == BTreeSet::from(["fkk".into(), "hgg".into()]), || {
        format!("red-first {red:?}")
    })?;
    ensure(blue == BTreeSet::from(["gf".into(), "kh".into()]), || {
        format!("blue-first {blue:?}")
    })
}

fn lift_reproduction() -> Result<(), String> {
    let out = bsgraph(&[
        "lift",
        &fixture("example_E.cg"),
        "--path",
        "g g f h",
        "--json",
    ]);
    exit_code(&out, 0)?;
    let v = json(&out)?;
    ensure(v["degree"] == "(2,8)", || format!("degree {}", v["degree"]))?;
    let vertices = v["vertices"].as_array().cloned().unwrap_or_default();
    let edges = v["edges"].as_array().cloned().unwrap_or_default();
    ensure(vertices.len() == 17 && edges.len() == 22, || {
        format!("{} vertices, {} edges", vertices.len(), edges.len())
    })?;
    // the figure: rows a^0, a^1, a^2 map to u, v, u; blue rows read g, k, g;
    // red edges leaving row 0 are f, leaving row 1 are h
    let row = |at: &Value| -> Result<u64, String> {
        let s = at.as_str().ok_or("label is not a string")?;
        BsWord::parse(s).map(|w| w.n_a()).map_err(|e| e.to_string())
    };
    let mut seen = BTreeSet::new();
    for entry in &vertices {
        let n = row(&entry["at"])?;
        let want = ["u", "v", "u"][n as usize];
        ensure(entry["vertex"] == want, || {
            format!("vertex {} -> {}", entry["at"], entry["vertex"])
        })?;
        seen.insert(entry["at"].to_string());
    }
    ensure(seen.len() == 17, || "repeated vertex labels".into())?;
    let (mut reds, mut blues) = (0, 0);
    for entry in &edges {
        let n = row(&entry["at"])?;
        let want = match entry["letter"].as_str() {
            Some("b") => {
                blues += 1;
                ["g", "k", "g"][n as usize]
            }
            Some("a") => {
                reds += 1;
                ["f", "h"][n as usize]
            }
            other => return Err(format!("letter {other:?}")),
        };
        ensure(entry["edge"] == want, || {
            format!(
                "edge ({}, {}) -> {}",
                entry["at"], entry["letter"], entry["edge"]
            )
        })?;
    }
    ensure((reds, blues) == (8, 14), || {
        format!("{reds} red, {blues} blue")
    })
}

fn traversal_extremes() -> Result<(), String> {
    let out = bsgraph(&[
        "traversals",
        &fixture("example_E.cg"),
        "--path",
        "g g f h",
        "--json",
    ]);
    exit_code(&out, 0)?;
    let v = json(&out)?;
    let names = |t: &Value| -> Vec<String> {
        t["edges"]
            .as_array()
            .map(|a| {
                a.iter()
                    .map(|e| e.as_str().unwrap_or("?").to_owned())
                    .collect()
            })
            .unwrap_or_default()
    };
    let mut longest = vec!["f".to_owned(), "h".to_owned()];
    longest.extend(std::iter::repeat_n("g".to_owned(), 8));
    ensure(names(&v["shortest"]) == ["g", "g", "f", "h"], || {
        format!("shortest {}", v["shortest"])
    })?;
    ensure(names(&v["longest"]) == longest, || {
        format!("longest {}", v["longest"])
    })?;
    ensure(
        v["shortest"]["degree"] == "(2,8)" && v["longest"]["degree"] == "(2,8)",
        || "traversal degrees differ from (2,8)".into(),
    )?;
    let lhs = BsWord::parse("bbaa").map_err(|e| e.to_string())?;
    let rhs = BsWord::parse("aabbbbbbbb").map_err(|e| e.to_string())?;
    ensure(lhs == rhs && lhs == BsWord::new(2, 8u32), || {
        format!("{lhs} vs {rhs}")
    })
}

fn oracle_uniqueness() -> Result<(), String> {
    let fx = load("example_E.cg");
    let c = fx.collection().map_err(|e| e.to_string())?;
    let g = &fx.graph;
    let mut paths: Vec<Path> = g.vertex_ids().map(Path::Vertex).collect();
    paths.extend(g.paths_up_to(6).into_iter().map(Path::Edges));
    ensure(paths.len() == 254, || format!("{} paths", paths.len()))?;
    let mut layers: HashMap<BsWord, Vec<Morphism<BsWord>>> = HashMap::new();
    for x in &paths {
        let lam: Morphism<BsWord> = lift_path(g, &c, x).map_err(|e| e.to_string())?;
        let d = lam.degree().clone();
        if !layers.contains_key(&d) {
            let all = enumerate_morphisms(g, &c, &d).map_err(|e| e.to_string())?;
            layers.insert(d.clone(), all);
        }
        let hits: Vec<_> = layers[&d]
            .iter()
            .filter(|m| m.check_traverses(g, x))
            .collect();
        ensure(hits.len() == 1 && *hits[0] == lam, || {
            format!(
                "path {}: {} enumerated morphisms traversed",
                g.display_path(x),
                hits.len()
            )
        })?;
    }
    Ok(())
}

fn law_suites() -> Result<(), String> {
    for name in ["example_E.cg", "grid_single_vertex.cg"] {
        let out = bsgraph(&["verify", &fixture(name), "--max-len", "4", "--json"]);
        exit_code(&out, 0)?;
        let v = json(&out)?;
        ensure(v["passed"] == true, || format!("{name}: {v}"))?;
        let laws = v["laws"].as_array().cloned().unwrap_or_default();
        let names: Vec<&str> = laws.iter().filter_map(|l| l["law"].as_str()).collect();
        for want in [
            "associativity",
            "identity",
            "degree-multiplicative",
            "factorization-unique",
        ] {
            ensure(names.contains(&want), || {
                format!("{name}: law {want} missing")
            })?;
        }
        ensure(
            laws.iter().all(|l| l["instances"].as_u64() > Some(0)),
            || format!("{name}: a law ran no instances"),
        )?;
    }
    // a broken composition must be reported with a counterexample
    let fx = load("example_E.cg");
    let ctx = bsgraph::LambdaContext::new(
        fx.graph.clone(),
        fx.collection().map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let broken = ctx
        .verify_category_with::<BsWord, _>(2, |mu, nu| ctx.compose(nu, mu))
        .map_err(|e| e.to_string())?;
    ensure(!broken.passed, || "reversed composition passed".into())?;
    ensure(
        broken
            .laws
            .iter()
            .filter(|l| !l.passed)
            .all(|l| l.counterexample.is_some()),
        || "failed law without counterexample".into(),
    )
}

/// Normal form under `ba -> abb`, independent of the pair arithmetic.
fn rewrite_normal_form(s: &str) -> (u64, u64) {
    let mut w: String = s.chars().filter(|&c| c != 'e').collect();
    while let Some(i) = w.find("ba") {
        w.replace_range(i..i + 2, "abb");
    }
    let n = w.chars().take_while(|&c| c == 'a').count();
    (n as u64, (w.len() - n) as u64)
}

fn strings(alphabet: &[char], max_len: usize, with_empty: bool) -> Vec<String> {
    let mut out = if with_empty {
        vec![String::new()]
    } else {
        Vec::new()
    };
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s| alphabet.iter().map(move |c| format!("{s}{c}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn word_soundness() -> Result<(), String> {
    let binary = strings(&['a', 'b'], 8, false);
    let ternary = strings(&['a', 'b', 'e'], 7, true);
    ensure(binary.len() == 510 && ternary.len() == 3280, || {
        "string counts".into()
    })?;
    let mut classes: HashMap<BsWord, (u64, u64)> = HashMap::new();
    for s in binary.iter().chain(&ternary) {
        let (n, m) = rewrite_normal_form(s);
        let w = BsWord::parse(s).map_err(|e| format!("{s}: {e}"))?;
        ensure(w == BsWord::new(n, m), || {
            format!("{s:?} parsed as {w}, rewrites to ({n},{m})")
        })?;
        let prev = *classes.entry(w.clone()).or_insert((n, m));
        ensure(prev == (n, m), || format!("{w} has two normal forms"))?;
    }
    let mut best: HashMap<(u64, u64), usize> = HashMap::from([((0, 0), 0)]);
    for s in strings(&['a', 'b'], 11, false) {
        best.entry(rewrite_normal_form(&s)).or_insert(s.len());
    }
    for n in 0..=3u64 {
        for m in 0..=8u64 {
            let form = BsWord::new(n, m)
                .shortest_form()
                .map_err(|e| e.to_string())?;
            let s = form.to_string();
            ensure(
                rewrite_normal_form(&s) == (n, m) && form.len() == best[&(n, m)],
                || {
                    format!(
                        "shortest form of ({n},{m}) is {s:?}, geodesic length {}",
                        best[&(n, m)]
                    )
                },
            )?;
        }
    }
    Ok(())
}

fn grid_cross_check() -> Result<(), String> {
    let fx = load("grid_single_vertex.cg");
    let c = fx.collection().map_err(|e| e.to_string())?;
    let g: &ColouredGraph = &fx.graph;
    let rho = g.edge("rho").map_err(|e| e.to_string())?;
    let beta = g.edge("beta").map_err(|e| e.to_string())?;
    for m in 0..=6u64 {
        for n in 0..=6 - m {
            let d = GridDegree(m, n);
            let all = enumerate_morphisms(g, &c, &d).map_err(|e| e.to_string())?;
            ensure(all.len() == 1, || format!("|Λ^{d}| = {}", all.len()))?;
            // both a^m b^n and b^n a^m must lift to the single morphism
            let ids = |first: Letter| -> Vec<_> {
                let (x, y) = if first == Letter::A {
                    ((rho, m), (beta, n))
                } else {
                    ((beta, n), (rho, m))
                };
                std::iter::repeat_n(x.0, x.1 as usize)
                    .chain(std::iter::repeat_n(y.0, y.1 as usize))
                    .collect()
            };
            for first in [Letter::A, Letter::B] {
                let e = ids(first);
                let x = if e.is_empty() {
                    Path::Vertex(g.vertex("w").map_err(|e| e.to_string())?)
                } else {
                    Path::Edges(e)
                };
                let lam = lift_path::<GridDegree>(g, &c, &x).map_err(|e| e.to_string())?;
                ensure(lam == all[0], || {
                    format!("lift of {} differs at {d}", g.display_path(&x))
                })?;
            }
        }
    }
    Ok(())
}

fn negative_path() -> Result<(), String> {
    let missing = fixture("example_E_missing_phi2.cg");
    let out = bsgraph(&["check", &missing]);
    exit_code(&out, 1)?;
    let t = text(&out);
    ensure(
        t.contains("uncovered red-first path: hgg") && t.contains("uncovered blue-first path: kh"),
        || format!("check printed {t:?}"),
    )?;
    let out = bsgraph(&["lift", &missing, "--path", "g g f h"]);
    exit_code(&out, 1)?;
    let t = text(&out);
    ensure(
        t.starts_with("NotCovered:") && (t.contains(" kh ") || t.contains(" hgg ")),
        || format!("lift printed {t:?}"),
    )
}

fn main() {
    let criteria: [(&str, Duration, Check); 8] = [
        ("1 fixture reproduction", SECOND, fixture_reproduction),
        ("2 lift reproduction", SECOND, lift_reproduction),
        ("3 traversal extremes", MINUTE, traversal_extremes),
        ("4 oracle uniqueness", 2 * MINUTE, oracle_uniqueness),
        (
            "5 category/functor/factorization suites",
            2 * MINUTE,
            law_suites,
        ),
        ("6 word-arithmetic soundness", MINUTE, word_soundness),
        ("7 grid cross-check", MINUTE, grid_cross_check),
        ("8 negative-path behavior", MINUTE, negative_path),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let verdict = match result {
            Ok(()) if took <= limit => "PASS".to_owned(),
            Ok(()) => format!("FAIL (took {took:.2?}, limit {limit:?})"),
            Err(msg) => format!("FAIL ({msg})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {name:<42} {verdict}  [{took:.2?}]");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
