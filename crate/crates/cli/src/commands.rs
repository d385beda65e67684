use std::collections::VecDeque;
use std::io::Read;

use serde_json::{json, Value};

use setram_core::constructions::{
    affine_tree_cover_colouring, bipartite_subsets_colouring, bipartite_tuples_colouring,
    code_colouring, distance_code, doubling_cycle_colouring, path_partition_lb_colouring,
    turan_affine_colouring, two_missing_colouring, ConstructionError,
};
use setram_core::cover::{
    bipartite_bound, complete_bound, constructive_cover_bipartite, constructive_cover_complete,
    critical_report, exact_cycle_partition, exact_path_partition, exact_tree_cover,
};
use setram_core::format::to_text;
use setram_core::ramsey::{
    cycle_lower_bound, general_bounds, has_mono_subgraph, ramsey_number, ramsey_search,
    trivial_ramsey_predicate, turan_upper_bound, SearchOptions, SearchOutcome, TargetGraph,
};
use setram_core::random::random_colouring;
use setram_core::ryser::{
    colouring_to_hypergraph, hypergraph_to_colouring, is_transversal, matching_number,
    ryser_transversal, saturate, transversal_exact,
};
use setram_core::{verify_cover, verify_partition, HostGraph, SetColouring};

use crate::input::{self, Certificate};
use crate::{
    acceptance, AcceptArgs, Cli, CliError, Command, ConstructArgs, ConstructKind, ConvertFrom,
    CoverArgs, CoverMode, CriticalArgs, Done, PartitionArgs, PartitionMode, RamseyCommand,
    RyserCommand, SearchFlags, VerifyArgs, EXIT_BUDGET, EXIT_NEGATIVE,
};

pub(crate) fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Result<Done, CliError> {
    match &cli.command {
        Command::Construct(a) => construct(a, cli.seed),
        Command::Cover(a) => cover(a, stdin),
        Command::Partition(a) => partition(a, stdin),
        Command::Critical(a) => critical(a, stdin),
        Command::Ramsey(c) => ramsey(c),
        Command::Ryser(c) => ryser(c, stdin),
        Command::Verify(a) => verify(a, stdin),
        Command::Accept(a) => accept(a, cli.seed),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn usage(e: ConstructionError) -> CliError {
    CliError::Usage(e.to_string())
}

fn need(x: Option<usize>, kind: ConstructKind, flag: &str) -> Result<usize, CliError> {
    x.ok_or_else(|| CliError::Usage(format!("{} needs --{flag}", to_value(&kind).as_str().unwrap_or("?"))))
}

fn construct(a: &ConstructArgs, seed: u64) -> Result<Done, CliError> {
    use ConstructKind as K;
    let kind = a.kind;
    let plane_order = || match (a.q, a.r) {
        (Some(q), _) => Ok(q),
        (None, Some(r)) if r >= 1 => Ok(r - 1),
        _ => Err(CliError::Usage("needs --q (or --r = q+1)".into())),
    };
    let c = match kind {
        K::AffineTreeCover => affine_tree_cover_colouring(plane_order()?).map_err(usage)?,
        K::TuranAffine => turan_affine_colouring(plane_order()?).map_err(usage)?,
        K::TwoMissing => two_missing_colouring(need(a.r, kind, "r")?).map_err(usage)?,
        K::BipartiteSubsets => {
            bipartite_subsets_colouring(need(a.r, kind, "r")?, need(a.k, kind, "k")?, a.m.unwrap_or(1))
                .map_err(usage)?
        }
        K::BipartiteTuples => bipartite_tuples_colouring(need(a.r, kind, "r")?, need(a.k, kind, "k")?).map_err(usage)?,
        K::DoublingCycle => {
            doubling_cycle_colouring(need(a.r, kind, "r")?, need(a.k, kind, "k")?, need(a.l, kind, "l")?)
                .map_err(usage)?
        }
        K::Code => {
            let k = need(a.k, kind, "k")?;
            let code = distance_code(need(a.r, kind, "r")?, k).map_err(usage)?;
            code_colouring(&code, k).map_err(usage)?
        }
        K::PathPartitionLb => path_partition_lb_colouring(need(a.r, kind, "r")?).map_err(usage)?,
        K::Random => {
            let n = need(a.n, kind, "n")?;
            let host = match a.m {
                Some(m) => HostGraph::bipartite(n, m),
                None => HostGraph::complete(n),
            };
            random_colouring(host, need(a.r, kind, "r")?, need(a.k, kind, "k")?, seed)
                .map_err(|e| CliError::Usage(e.to_string()))?
        }
    };
    let check = if a.check { Some(check_construction(a, &c)?) } else { None };
    let failed = check.as_ref().is_some_and(|v| v["holds"] == json!(false));
    let code = if failed { EXIT_NEGATIVE } else { 0 };
    if a.text {
        return Ok(Done { outcome: Value::Null, code, raw: Some(to_text(&c)) });
    }
    let mut out = json!({
        "vertices": c.vertex_count(),
        "r": c.r(),
        "k": c.uniform_k(),
        "colouring": c,
    });
    if let Some(ch) = check {
        out["check"] = ch;
    }
    Ok(Done::with_code(out, code))
}

/// Whether every colour class is bipartite, by BFS 2-colouring.
fn colour_classes_bipartite(c: &SetColouring) -> bool {
    let n = c.vertex_count();
    let host = c.host();
    (0..c.r()).all(|col| {
        let mut side = vec![u8::MAX; n];
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in host.neighbours(x) {
                    if !c.colour(x, y).contains(col) {
                        continue;
                    }
                    if side[y] == u8::MAX {
                        side[y] = 1 - side[x];
                        queue.push_back(y);
                    } else if side[y] == side[x] {
                        return false;
                    }
                }
            }
        }
        true
    })
}

fn check_construction(a: &ConstructArgs, c: &SetColouring) -> Result<Value, CliError> {
    use ConstructKind as K;
    let r = c.r();
    let k = c.uniform_k().unwrap_or(0);
    let tc = || exact_tree_cover(c, a.budget).map(|e| e.value);
    let (claim, holds, value): (String, bool, Value) = match a.kind {
        K::AffineTreeCover => {
            let t = tc()?;
            (format!("tree cover number = {}", r - 1), t == r - 1, json!(t))
        }
        K::TuranAffine => {
            let target = TargetGraph::Clique(r);
            let hit = has_mono_subgraph(c, target);
            (format!("no monochromatic {target}"), hit.is_none(), to_value(&hit))
        }
        K::TwoMissing => {
            let t = tc()?;
            ("tree cover number = 2".into(), t == 2, json!(t))
        }
        K::BipartiteSubsets => {
            let t = tc()?;
            (format!("tree cover number >= {}", r - k + 1), t > r - k, json!(t))
        }
        K::BipartiteTuples => {
            let t = tc()?;
            let b = r - k + r / k - 1;
            (format!("tree cover number >= {b}"), t >= b, json!(t))
        }
        K::DoublingCycle => {
            let target = TargetGraph::OddCycle(a.l.unwrap_or(3));
            let hit = has_mono_subgraph(c, target);
            (format!("no monochromatic {target}"), hit.is_none(), to_value(&hit))
        }
        K::Code => {
            let ok = colour_classes_bipartite(c);
            ("every colour class is bipartite".into(), ok, json!(ok))
        }
        K::PathPartitionLb => {
            let p = exact_path_partition(c)?.value;
            ("path partition number >= 2".into(), p >= 2, json!(p))
        }
        K::Random => {
            let v = c.validate();
            ("valid colouring".into(), v.is_empty(), json!(v.len()))
        }
    };
    Ok(json!({ "claim": claim, "holds": holds, "value": value }))
}

fn cover(a: &CoverArgs, stdin: &mut dyn Read) -> Result<Done, CliError> {
    let c = input::colouring(&input::read(&a.file, stdin)?)?;
    let (cert, extra) = match a.mode {
        CoverMode::Exact => {
            let ex = exact_tree_cover(&c, a.budget)?;
            (ex.certificate, json!({ "nodes": ex.nodes }))
        }
        CoverMode::Construct => {
            let k = c
                .uniform_k()
                .ok_or_else(|| CliError::Usage("constructive covers need a uniform k".into()))?;
            if c.host().is_complete() {
                (constructive_cover_complete(&c)?, json!({ "bound": complete_bound(c.r(), k) }))
            } else {
                (constructive_cover_bipartite(&c)?, json!({ "bound": bipartite_bound(c.r(), k) }))
            }
        }
    };
    let check = verify_cover(&c, &cert);
    if !check.is_valid() {
        return Err(CliError::Internal(format!("cover failed verification: {:?}", check.problems)));
    }
    let mut out = json!({ "value": cert.len(), "certificate": cert });
    for (key, v) in extra.as_object().expect("object") {
        out[key] = v.clone();
    }
    Ok(Done::ok(out))
}

fn partition(a: &PartitionArgs, stdin: &mut dyn Read) -> Result<Done, CliError> {
    let c = input::colouring(&input::read(&a.file, stdin)?)?;
    let p = match a.mode {
        PartitionMode::Paths => exact_path_partition(&c)?,
        PartitionMode::Cycles => exact_cycle_partition(&c)?,
    };
    let check = verify_partition(&c, &p.certificate);
    if !check.is_valid() {
        return Err(CliError::Internal(format!("partition failed verification: {:?}", check.problems)));
    }
    Ok(Done::ok(json!({ "value": p.value, "certificate": p.certificate })))
}

fn critical(a: &CriticalArgs, stdin: &mut dyn Read) -> Result<Done, CliError> {
    let c = input::colouring(&input::read(&a.file, stdin)?)?;
    let rep = critical_report(&c, a.t, a.budget)?;
    Ok(Done::ok(to_value(&rep)))
}

fn options(f: &SearchFlags) -> Result<SearchOptions, CliError> {
    let time_limit_ms = match f.time_limit {
        Some(s) if !(s.is_finite() && s >= 0.0) => {
            return Err(CliError::Usage(format!("--time-limit must be a non-negative number, got {s}")))
        }
        Some(s) => Some((s * 1000.0).round() as u64),
        None => None,
    };
    Ok(SearchOptions {
        budget: f.budget,
        symmetry: !f.no_symmetry,
        degree_prune: !f.no_degree_prune,
        threads: f.threads.max(1),
        time_limit_ms,
    })
}

fn check_witness(w: &SetColouring, target: TargetGraph) -> Result<(), CliError> {
    if !w.validate().is_empty() || has_mono_subgraph(w, target).is_some() {
        return Err(CliError::Internal(format!("witness fails to avoid {target}")));
    }
    Ok(())
}

fn ramsey(c: &RamseyCommand) -> Result<Done, CliError> {
    match c {
        RamseyCommand::Search { params, n, flags } => {
            let rep = ramsey_search(params.r, params.k, params.target, *n, &options(flags)?)?;
            let code = match &rep.outcome {
                SearchOutcome::Avoidable { witness } => {
                    check_witness(witness, params.target)?;
                    0
                }
                SearchOutcome::Unavoidable => 0,
                SearchOutcome::BudgetExceeded => EXIT_BUDGET,
            };
            Ok(Done::with_code(to_value(&rep), code))
        }
        RamseyCommand::Number { params, n_max, flags } => {
            let num = ramsey_number(params.r, params.k, params.target, *n_max, &options(flags)?)?;
            if let Some(w) = &num.witness {
                check_witness(w, params.target)?;
            }
            let starved = num.value.is_none() && num.searches.iter().any(|s| s.status == "budget_exceeded");
            Ok(Done::with_code(to_value(&num), if starved { EXIT_BUDGET } else { 0 }))
        }
        RamseyCommand::Bounds { params } => {
            let (r, k, target) = (params.r, params.k, params.target);
            if k == 0 || k > r || r > 64 {
                return Err(CliError::Usage(format!("need 1 <= k <= r <= 64, got r={r}, k={k}")));
            }
            let mut out = json!({ "general": general_bounds(r, k, target) });
            match target {
                TargetGraph::Clique(t) => {
                    out["trivial"] = json!(trivial_ramsey_predicate(r, k, t));
                    out["turan_upper"] = json!(turan_upper_bound(r, k, t));
                }
                TargetGraph::OddCycle(l) => {
                    let b = cycle_lower_bound(r, k, l)?;
                    out["cycle_lower"] = json!({ "exceeds": b.bound, "source": b.source });
                }
            }
            Ok(Done::ok(out))
        }
    }
}

fn ryser(c: &RyserCommand, stdin: &mut dyn Read) -> Result<Done, CliError> {
    match c {
        RyserCommand::Convert { file, from } => {
            let text = input::read(file, stdin)?;
            match from {
                ConvertFrom::Hypergraph => {
                    let h = input::hypergraph(&text)?;
                    let g = hypergraph_to_colouring(&h)?;
                    Ok(Done::ok(json!({ "vertices": g.vertex_count(), "colouring": g })))
                }
                ConvertFrom::Colouring => {
                    let g = input::colouring(&text)?;
                    let s = saturate(&g)?;
                    let h = colouring_to_hypergraph(&s)?;
                    Ok(Done::ok(json!({
                        "saturation_added_colours": s != g,
                        "hypergraph": h,
                        "text": h.to_text(),
                    })))
                }
            }
        }
        RyserCommand::Transversal { file, k, exact, budget } => {
            let h = input::hypergraph(&input::read(file, stdin)?)?;
            let k = k.unwrap_or_else(|| h.intersection_level());
            let t = ryser_transversal(&h, k)?;
            if !is_transversal(&h, &t.vertices) || t.vertices.len() > t.bound {
                return Err(CliError::Internal("constructed transversal failed its check".into()));
            }
            let mut out = json!({ "k": t.k, "bound": t.bound, "size": t.vertices.len(), "vertices": t.vertices });
            if *exact {
                let ex = transversal_exact(&h, *budget)?;
                if !is_transversal(&h, &ex.vertices) {
                    return Err(CliError::Internal("exact transversal failed its check".into()));
                }
                out["exact"] = to_value(&ex);
            }
            Ok(Done::ok(out))
        }
        RyserCommand::Check { file, budget } => {
            let h = input::hypergraph(&input::read(file, stdin)?)?;
            let tau = transversal_exact(&h, *budget)?;
            let g = hypergraph_to_colouring(&h)?;
            let tc = exact_tree_cover(&g, *budget)?;
            let nu = matching_number(&h, *budget)?;
            let equal = tau.size == tc.value;
            Ok(Done::with_code(
                json!({
                    "transversal_number": tau.size,
                    "tree_cover_number": tc.value,
                    "matching_number": nu,
                    "intersection_level": h.intersection_level(),
                    "equal": equal,
                    "transversal": tau.vertices,
                }),
                if equal { 0 } else { EXIT_NEGATIVE },
            ))
        }
    }
}

fn verify(a: &VerifyArgs, stdin: &mut dyn Read) -> Result<Done, CliError> {
    if a.colouring == "-" && a.certificate == "-" {
        return Err(CliError::Usage("only one of the two inputs can be standard input".into()));
    }
    let c = input::colouring(&input::read(&a.colouring, stdin)?)?;
    let (kind, size, v) = match input::certificate(&input::read(&a.certificate, stdin)?)? {
        Certificate::Cover(cert) => ("cover", cert.len(), verify_cover(&c, &cert)),
        Certificate::Partition(cert) => ("partition", cert.pieces.len(), verify_partition(&c, &cert)),
    };
    let valid = v.is_valid();
    Ok(Done::with_code(
        json!({ "kind": kind, "size": size, "valid": valid, "problems": v.problems }),
        if valid { 0 } else { EXIT_NEGATIVE },
    ))
}

fn accept(a: &AcceptArgs, seed: u64) -> Result<Done, CliError> {
    let results = acceptance::run(seed, &a.only, |_| {});
    let failed = results.iter().filter(|r| !r.passed).count();
    Ok(Done::with_code(
        json!({ "passed": results.len() - failed, "failed": failed, "criteria": results }),
        if failed == 0 { 0 } else { EXIT_NEGATIVE },
    ))
}
