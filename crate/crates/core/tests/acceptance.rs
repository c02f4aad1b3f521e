//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Every comparison is exact (tolerance 0); each
//! criterion also has a wall-clock budget.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use slidechrom::chromatic::{chromatic_theorem, verify_corollary, verify_theorem};
use slidechrom::cli::{self, Status};
use slidechrom::compositions::{compositions_in_window, slide_set};
use slidechrom::dyck::{dyck_graph, enumerate_paths, restriction_map};
use slidechrom::keys::{
    expand_in_keys, first_counterexamples, fixtures_dir, load_fixtures, replay_fixtures,
    search_counterexamples,
};
use slidechrom::partitions::{
    barrho_labeled, incomparability_poset, omega_labeling, orientation_from_perm, partition_gf,
    rdes, rdes_labeled, LabeledPoset, Poset,
};
use slidechrom::perm::{permutations, Permutation};
use slidechrom::slide::{
    backstable_decompose, expand_in_slides, fundamental_qsym_on, slide_poly,
    slide_poly_chain_oracle,
};
use slidechrom::{
    RestrictionMap, SlideExpansion, StrongComposition, TCoefficient, TPolynomial,
    WeakComposition, Window,
};

const SIX_VERTEX: &str = "ENEEENENEENNEENEE@6,5";
const THREE_PATH: &str = "ENEENENEE@3,3";

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn wc(s: &str) -> WeakComposition {
    s.parse().unwrap()
}

fn sc(parts: &[u32]) -> StrongComposition {
    StrongComposition::new(parts.to_vec()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn graph_fidelity() -> Check {
    for (lit, edges, rho) in [
        (
            SIX_VERTEX,
            serde_json::json!([[1, 2], [1, 3], [2, 3], [3, 4], [3, 5], [4, 5], [5, 6]]),
            serde_json::json!([1, 4, 5, 5, 5, 5]),
        ),
        (THREE_PATH, serde_json::json!([[1, 2], [2, 3]]), serde_json::json!([1, 3, 3])),
    ] {
        let res = cli::run(["slidechrom", "graph", lit]);
        ensure(res.status == Status::Ok, || format!("{lit}: {}", res.text))?;
        ensure(res.payload["edges"] == edges, || {
            format!("{lit}: edges {}", res.payload["edges"])
        })?;
        ensure(res.payload["rho"] == rho, || format!("{lit}: rho {}", res.payload["rho"]))?;
    }
    Ok("six-vertex rho (1,4,5,5,5,5) with 7 edges; three-path rho (1,3,3), edges 12 23".into())
}

fn worked_linear_order() -> Check {
    let pi = Permutation::identity(5);
    let omega = vec![2, 3, 1, 5, 4];
    let rho = RestrictionMap(vec![1, 4, 5, 6, 4]);
    let bar = barrho_labeled(&pi, &rho, &omega);
    ensure(bar.values() == [1, 2, 3, 3, 4], || format!("barrho {:?}", bar.values()))?;
    let a = rdes_labeled(&pi, &rho, &omega);
    ensure(a == wc("2,0,2,1"), || format!("rdes {a}"))?;
    let w = Window::positive(4);
    let lp = LabeledPoset::linear(&pi, omega, rho).unwrap();
    let gf = partition_gf(&lp, &w);
    let expected = &slide_poly(&wc("2,0,2,1"), &w) + &slide_poly(&wc("1,1,2,1"), &w);
    ensure(gf == expected, || "partition gf differs from the two slides".into())?;
    Ok(format!("barrho (1,2,3,3,4), rdes {a}, gf has {} terms", gf.len()))
}

fn forked_poset_expansion() -> Check {
    let p = Poset::from_relations(3, &[(3, 2), (1, 2)]).unwrap();
    let lp = LabeledPoset::new(p, vec![1, 2, 3], RestrictionMap(vec![2, 3, 2])).unwrap();
    let w = Window::positive(3);
    let e = expand_in_slides(&partition_gf(&lp, &w), &w).map_err(|e| e.to_string())?;
    let expected: SlideExpansion = ["1,2", "1,1,1", "0,2,1"]
        .iter()
        .map(|s| (wc(s), TCoefficient::one()))
        .collect();
    ensure(e == expected, || format!("expansion {:?}", e.to_json()))?;
    Ok("{120:1, 111:1, 021:1}".into())
}

fn theorem_sweep() -> Check {
    let mut count = 0;
    for n in 0..=5 {
        for r in 0..=4 {
            for d in enumerate_paths(n, r) {
                let rep = verify_theorem(&d, &Window::positive(r as i64));
                ensure(rep.equal, || format!("{d}: brute != theorem"))?;
                ensure(rep.slide_positive, || format!("{d}: negative slide coefficient"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} paths, all equal and slide-positive"))
}

fn displayed_expansion() -> Check {
    let w = Window::positive(3);
    let (_, e) = chromatic_theorem(&THREE_PATH.parse().unwrap(), &w);
    let expected: SlideExpansion = [
        ("1,1,1", TCoefficient::from_i64s(&[1, 1])),
        ("2,0,1", TCoefficient::t_power(1)),
        ("1|2", TCoefficient::t_power(1)),
        ("1|1,0,1", TCoefficient::t_power(1)),
        ("1,1|1", TCoefficient::t_power(2)),
    ]
    .into_iter()
    .map(|(s, c)| (wc(s), c))
    .collect();
    ensure(e == expected, || format!("expansion {}", e.to_json()))?;
    for s in ["1|2", "1|1,0,1", "1,1|1"] {
        ensure(slide_poly(&wc(s), &w).is_zero(), || format!("S[{s}] nonzero on [1,3]"))?;
    }
    Ok("111:1+t, 201:t, (1|2):t, (1|101):t, (1,1|1):t^2; last three vanish".into())
}

fn backstable_truncations() -> Check {
    let mut count = 0;
    for n in 0..=4 {
        for r in 0..=3 {
            for d in enumerate_paths(n, r) {
                for m in [1, 2] {
                    let w = Window::backstable(m, r as i64);
                    let rep = verify_theorem(&d, &w);
                    ensure(rep.equal, || format!("{d} on {w}: brute != theorem"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} (path, m) pairs"))
}

fn tail_strong_decomposition() -> Check {
    let got = backstable_decompose(&wc("1,2|0,2,0,1"), 4).map_err(|e| e.to_string())?;
    let expected = vec![
        (sc(&[1, 2]), wc("0,2,0,1")),
        (sc(&[1, 2, 1]), wc("0,1,0,1")),
        (sc(&[1, 2, 2]), wc("0,0,0,1")),
        (sc(&[1, 2, 2, 1]), WeakComposition::zero()),
    ];
    ensure(got == expected, || format!("decomposition {got:?}"))?;
    let r = 3;
    let mut count = 0;
    for weight in 0..=5 {
        for a in compositions_in_window(weight, &Window::new(-2, r).unwrap()) {
            if !a.is_tail_strong() {
                continue;
            }
            let terms = backstable_decompose(&a, r).map_err(|e| e.to_string())?;
            for m in 1..=3 {
                let lhs = slide_poly(&a, &Window::new(1 - m, r).unwrap());
                let neg = Window::new(1 - m, 0).unwrap();
                let mut rhs = TPolynomial::zero(Window::new(1 - m, r).unwrap());
                for (f, s) in &terms {
                    rhs += &(&fundamental_qsym_on(f, &neg) * &slide_poly(s, &Window::positive(r)));
                }
                ensure(lhs == rhs, || format!("{a}, m={m}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("worked example reproduced; {count} (a, m) identities"))
}

fn corollary() -> Check {
    let mut count = 0;
    for n in 0..=4 {
        for r in 0..=3 {
            for d in enumerate_paths(n, r) {
                ensure(verify_corollary(&d, n as i64), || format!("{d}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} paths with m = n"))
}

fn descent_suites() -> Check {
    let mut orders = 0;
    for n in 1..=5 {
        for r in 0..=4 {
            for d in enumerate_paths(n, r) {
                let g = dyck_graph(&d);
                let rho = restriction_map(&d);
                let p = incomparability_poset(&g).unwrap();
                let w = Window::positive(r as i64);
                for pi in permutations(n) {
                    let omega = omega_labeling(&orientation_from_perm(&g, &pi));
                    for i in 1..n {
                        let desc = p.lt(pi.at(i + 1), pi.at(i));
                        let asc = omega[pi.at(i) - 1] < omega[pi.at(i + 1) - 1];
                        ensure(desc == asc, || format!("{d}, pi={pi}, i={i}"))?;
                    }
                    let a = rdes(&pi, &rho, &p);
                    ensure(rdes_labeled(&pi, &rho, &omega) == a, || {
                        format!("{d}, pi={pi}: rdes forms differ")
                    })?;
                    let lp = LabeledPoset::linear(&pi, omega, rho.clone()).unwrap();
                    ensure(partition_gf(&lp, &w) == slide_poly(&a, &w), || {
                        format!("{d}, pi={pi}: gf != S[{a}]")
                    })?;
                    orders += 1;
                }
            }
        }
    }
    Ok(format!("{orders} linear orders"))
}

fn model_cross_validation() -> Check {
    let mut count = 0;
    let support = Window::new(-2, 5).unwrap();
    for weight in 0..=6 {
        for a in compositions_in_window(weight, &support) {
            for lo in [-2, -1, 1] {
                let w = Window::new(lo, 5).unwrap();
                ensure(slide_poly(&a, &w) == slide_poly_chain_oracle(&a, &w), || {
                    format!("{a} on {w}")
                })?;
                count += 1;
            }
        }
    }
    let set = slide_set(&wc("0,2,0,2"), &Window::positive(4));
    let listed = [
        "0202", "2002", "2020", "2200", "1102", "1120", "1111", "0211", "2011", "2101", "2110",
    ];
    for s in listed {
        ensure(set.contains(&wc(s)), || format!("{s} missing from slide set"))?;
    }
    let extra: BTreeSet<String> = set
        .iter()
        .map(|b| b.to_string())
        .filter(|b| !listed.iter().any(|s| wc(s).to_string() == *b))
        .collect();
    let w4 = Window::positive(4);
    let s = slide_poly(&wc("0,2,0,1"), &w4);
    for e in ["0,2,0,1", "2,0,0,1", "2,0,1", "2,1", "1,1,0,1", "1,1,1"] {
        ensure(s.coefficient(&wc(e)) == TCoefficient::one(), || format!("x^{e} missing"))?;
    }
    Ok(format!(
        "{count} (a, window) pairs agree; 0202 set = 11 listed + {extra:?}; S[0201] = 6 listed + {} more",
        s.len() - 6
    ))
}

fn key_positivity() -> Check {
    let small: Vec<_> = (1..=3)
        .map(|n| search_counterexamples(n, 3).map_err(|e| e.to_string()))
        .collect::<std::result::Result<_, _>>()?;
    ensure(small.iter().all(Vec::is_empty), || "negative coefficient for n <= 3".into())?;
    let (r, found) = first_counterexamples(6, 6)
        .map_err(|e| e.to_string())?
        .ok_or("no counterexample at n = 6, r <= 6")?;
    let pinned = load_fixtures(&fixtures_dir()).map_err(|e| e.to_string())?;
    ensure(found == pinned, || "search result differs from pinned fixture".into())?;
    ensure(replay_fixtures(&pinned).map_err(|e| e.to_string())?, || {
        "fixture replay failed".into()
    })?;
    // dense solve on the first witness, independently of the search's peel
    let first = &found[0];
    let rr = first.path.r() as i64;
    let (p, _) = chromatic_theorem(&first.path, &Window::positive(rr));
    let dense = expand_in_keys(&p, rr).map_err(|e| e.to_string())?;
    ensure(dense.get(&first.composition) == first.coefficient, || {
        "dense solve disagrees on first witness".into()
    })?;
    Ok(format!(
        "none for n <= 3; n = 6 first at r = {r}: {} records, e.g. {} K[{}] {}",
        found.len(),
        first.path.literal(),
        first.composition,
        first.coefficient
    ))
}

fn main() -> ExitCode {
    let sec = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        ("1 graph and restriction map fidelity", sec(1), graph_fidelity),
        ("2 worked linear order", sec(1), worked_linear_order),
        ("3 forked poset slide expansion", sec(1), forked_poset_expansion),
        ("4 slide expansion sweep n<=5 r<=4", sec(300), theorem_sweep),
        ("5 displayed n=3 expansion", sec(1), displayed_expansion),
        ("6 backstable truncations n<=4 r<=3 m<=2", sec(300), backstable_truncations),
        ("7 tail-strong decomposition", sec(300), tail_strong_decomposition),
        ("8 fundamental expansion n<=4 r<=3", sec(300), corollary),
        ("9 descent/ascent and single-slide suites", sec(300), descent_suites),
        ("10 slide model cross-validation", sec(300), model_cross_validation),
        ("11 key positivity search", sec(7200), key_positivity),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget {budget:?}")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] {name}: tolerance exact, {:.2}s (budget {}s): {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} failed", failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
