//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use jsl_core::enumerate::{enum_levels, validate_theorems_with, Claim, EnumConfig};
use jsl_core::omod::{is_omodular, verify_witness};
use jsl_core::substructure::{find_embeddings, ForbiddenSummary};
use jsl_core::{
    builtin, canonical_form, check_omodular, classify_strength, is_isomorphic, modular_law_check,
    run_pipeline, ElementSet, JoinSemilattice, Poset, StrengthSelection, StrongReading, Template,
};
use jsl_oracles::{self as oracle, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn jsl() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jsl"))
}

fn exit_code(args: &[&str]) -> Result<i32, String> {
    let out = jsl().args(args).output().map_err(|e| e.to_string())?;
    out.status
        .code()
        .ok_or_else(|| format!("jsl {args:?} terminated by signal"))
}

fn to_jsl(m: &Matrix) -> JoinSemilattice {
    let names = (0..m.len()).map(|i| format!("e{i}")).collect();
    JoinSemilattice::from_poset(Poset::from_matrix(names, m).expect("order")).expect("jsl")
}

fn permute(m: &Matrix, perm: &[usize]) -> Matrix {
    perm.iter()
        .map(|&i| perm.iter().map(|&j| m[i][j]).collect())
        .collect()
}

fn all_of_size(n: usize) -> Vec<JoinSemilattice> {
    enum_levels(n, EnumConfig::default())
        .expect("enumeration")
        .pop()
        .expect("level")
        .into_iter()
        .map(|r| r.structure)
        .collect()
}

fn all_up_to(n: usize) -> Vec<JoinSemilattice> {
    (1..=n).flat_map(all_of_size).collect()
}

fn criterion_1() -> Outcome {
    for name in ["m2", "m4"] {
        let s = builtin(name).unwrap();
        let w = check_omodular(&s).ok_or(format!("{name} reported o-modular"))?;
        ensure(verify_witness(&s, &w), || format!("{name}: witness fails verification"))?;
        ensure(
            oracle::omodular_violation(&s.poset().matrix()).is_some(),
            || format!("{name}: oracle disagrees"),
        )?;
        let arg = format!("builtin:{name}");
        ensure(exit_code(&["check", &arg])? == 1, || format!("jsl check {name} exit"))?;
    }
    let mut holds: Vec<String> = (1..=6).map(|k| format!("chain:{k}")).collect();
    holds.push("m3".into());
    holds.push("antichain-top:3".into());
    for name in &holds {
        let s = builtin(name).unwrap();
        ensure(check_omodular(&s).is_none(), || format!("{name} reported non-o-modular"))?;
        ensure(
            oracle::omodular_violation(&s.poset().matrix()).is_none(),
            || format!("{name}: oracle disagrees"),
        )?;
        let arg = format!("builtin:{name}");
        ensure(exit_code(&["check", &arg])? == 0, || format!("jsl check {name} exit"))?;
    }
    Ok(format!("m2, m4 non-o-modular; {} builtins o-modular", holds.len()))
}

fn criterion_2() -> Outcome {
    let mut hits = 0;
    for s in all_up_to(7) {
        let f = ForbiddenSummary::compute(&s);
        if f.forbidden(StrongReading::Lu) {
            hits += 1;
            let w = check_omodular(&s).ok_or_else(|| {
                format!("forbidden substructure but o-modular:\n{}", s.to_structure_text())
            })?;
            ensure(verify_witness(&s, &w), || "witness fails verification".into())?;
        }
    }
    Ok(format!("{hits} structures with a forbidden substructure, all witnessed"))
}

fn criterion_3() -> Outcome {
    let mut non = 0;
    for s in all_up_to(7) {
        if is_omodular(&s) {
            continue;
        }
        non += 1;
        let f = ForbiddenSummary::compute(&s);
        ensure(f.forbidden_semi_strong(), || {
            format!("no semi-strong M2/M4:\n{}", s.to_structure_text())
        })?;
        let trace = run_pipeline(&s)
            .map_err(|e| format!("{e}\n{}", s.to_structure_text()))?
            .ok_or("pipeline found no witness")?;
        ensure(trace.facts.iter().all(|f| f.holds), || "failed fact".into())?;
    }
    Ok(format!("{non} non-o-modular structures, pipeline facts all PASS"))
}

fn criterion_4(dump: &Path) -> Outcome {
    let mut total = 0;
    for n in 1..=7 {
        let r = validate_theorems_with(n, StrengthSelection::Lu, EnumConfig::default())
            .map_err(|e| e.to_string())?;
        total += r.jsl_count;
        let v = r.violations_of(Claim::C(StrongReading::Lu));
        ensure(v.is_empty(), || format!("n={n}: {} C:lu violations", v.len()))?;
    }
    let dir = dump.join("lu");
    let dir_s = dir.to_str().unwrap();
    let code = exit_code(&[
        "enumerate", "--n", "7", "--validate", "--strength", "lu", "--dump-dir", dir_s,
    ])?;
    ensure(code == 0, || format!("jsl enumerate --n 7 exit {code}"))?;
    let dumped = std::fs::read_dir(&dir).map(|d| d.count()).unwrap_or(0);
    ensure(dumped == 0, || format!("{dumped} violation files dumped"))?;
    Ok(format!("{total} structures, zero C:lu violations"))
}

fn criterion_5(dump: &Path) -> Outcome {
    let mut per_n = Vec::new();
    for n in 1..=7 {
        let run = || {
            validate_theorems_with(n, StrengthSelection::Strict, EnumConfig::default())
                .map(|r| {
                    r.violations_of(Claim::C(StrongReading::Strict))
                        .into_iter()
                        .cloned()
                        .collect::<Vec<_>>()
                })
                .map_err(|e| e.to_string())
        };
        let first = run()?;
        ensure(first == run()?, || format!("n={n}: list differs between runs"))?;
        for v in &first {
            ensure(v.reproduces().unwrap_or(false), || format!("{} does not reproduce", v.canonical))?;
        }
        per_n.push(first.len());
    }
    let dir = dump.join("strict");
    let dir_s = dir.to_str().unwrap();
    let args = [
        "enumerate", "--n", "7", "--validate", "--strength", "strict", "--json", "--dump-dir", dir_s,
    ];
    let a = jsl().args(args).output().map_err(|e| e.to_string())?;
    let b = jsl().args(args).output().map_err(|e| e.to_string())?;
    ensure(a.status.code() == Some(0), || "strict census exit code".into())?;
    ensure(a.stdout == b.stdout, || "strict census output differs between runs".into())?;
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    ensure(files.len() == per_n[6], || {
        format!("{} files for {} violations", files.len(), per_n[6])
    })?;
    for f in &files {
        let p = f.to_str().unwrap();
        ensure(exit_code(&["check", p])? == 1, || format!("{p}: check reports o-modular"))?;
        ensure(exit_code(&["forbidden", p, "--strength", "strict"])? == 0, || {
            format!("{p}: forbidden finds a strict configuration")
        })?;
        ensure(exit_code(&["forbidden", p, "--strength", "lu"])? == 1, || {
            format!("{p}: forbidden finds no lu configuration")
        })?;
    }
    Ok(format!("C:strict violations by n=1..7: {per_n:?}, stable, all re-verified"))
}

fn criterion_6() -> Outcome {
    let expected = [1usize, 1, 2, 5, 15, 53, 222];
    let levels = enum_levels(7, EnumConfig::default()).map_err(|e| e.to_string())?;
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    ensure(counts == expected, || format!("counts {counts:?}"))?;
    for n in 1..=5 {
        let direct = oracle::jsl_classes_direct(n);
        let ours: BTreeSet<String> = levels[n - 1]
            .iter()
            .map(|r| oracle::brute_canonical(&r.structure.poset().matrix()))
            .collect();
        ensure(ours == direct, || format!("n={n}: direct filter disagrees"))?;
    }
    for n in 6..=7 {
        let lattices = oracle::lattice_classes(n + 1);
        let ours: BTreeSet<String> = levels[n - 1]
            .iter()
            .map(|r| oracle::bounded_canonical(&oracle::adjoin_bottom(&r.structure.poset().matrix())))
            .collect();
        ensure(ours.len() == expected[n - 1], || format!("n={n}: collapsed under bijection"))?;
        ensure(ours == lattices, || {
            format!("n={n}: {} lattices vs {} structures", lattices.len(), ours.len())
        })?;
    }
    Ok(format!("counts {counts:?}; direct n≤5, lattice bijection n=6,7"))
}

fn shuffle(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

fn agrees(m: &Matrix) -> Result<(), String> {
    let s = to_jsl(m);
    let ours = check_omodular(&s).map(|w| (w.a, w.b, w.c));
    ensure(ours == oracle::omodular_violation(m), || {
        format!("disagreement:\n{}", s.to_structure_text())
    })
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f6d_6f64);
    let mut exhaustive = 0;
    for s in all_up_to(6) {
        let m = s.poset().matrix();
        agrees(&m)?;
        agrees(&permute(&m, &shuffle(&mut rng, m.len())))?;
        exhaustive += 1;
    }
    for _ in 0..1000 {
        let len = rng.gen_range(0..=8);
        let choices: Vec<u64> = (0..len).map(|_| rng.gen()).collect();
        let m = oracle::grow(&choices);
        agrees(&permute(&m, &shuffle(&mut rng, m.len())))?;
    }
    Ok(format!("{exhaustive} classes (n≤6) and 1000 random structures (n≤9) agree"))
}

fn subsets(n: usize) -> impl Iterator<Item = ElementSet> {
    (0u64..1 << n).map(ElementSet::from_bits)
}

fn criterion_8() -> Outcome {
    let all6 = all_up_to(6);
    let mut classified = 0;
    for s in &all6 {
        let p = s.poset();
        let n = s.len();
        for x in subsets(n) {
            let l = p.lower_bounds_of(x);
            let u = p.upper_bounds_of(x);
            ensure(p.lower_bounds_of(p.upper_bounds_of(l)) == l, || "L U L ≠ L".into())?;
            ensure(p.upper_bounds_of(p.lower_bounds_of(u)) == u, || "U L U ≠ U".into())?;
            for y in subsets(n).filter(|y| x.is_subset(*y)) {
                ensure(p.lower_bounds_of(y).is_subset(l), || "L not antitone".into())?;
                ensure(p.upper_bounds_of(y).is_subset(u), || "U not antitone".into())?;
            }
            if !x.is_empty() && s.is_join_closed(x) {
                let st = classify_strength(s, x).map_err(|e| e.to_string())?;
                ensure(!st.strong_strict || st.strong_lu, || "strict ⇏ lu".into())?;
                ensure(!st.strong_lu || st.semi_strong, || "lu ⇏ semi".into())?;
                classified += 1;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let k = s.join(i, j);
                let ub = p.upper_bounds_of(ElementSet::from_iter([i, j]));
                ensure(ub.contains(k) && ub.iter().all(|u| s.leq(k, u)), || {
                    "join is not the least upper bound".into()
                })?;
            }
        }
        match modular_law_check(s) {
            Ok(v) => ensure(v.is_none() == is_omodular(s), || {
                format!("lattice agreement fails:\n{}", s.to_structure_text())
            })?,
            Err(_) => ensure(!oracle::is_lattice(&p.matrix()), || "lattice rejected".into())?,
        }
        for template in [Template::M2, Template::M4] {
            for e in find_embeddings(s, template) {
                let st = e.strength;
                ensure(!st.strong_strict || st.strong_lu, || "strict ⇏ lu".into())?;
                ensure(!st.strong_lu || st.semi_strong, || "lu ⇏ semi".into())?;
            }
        }
    }
    let all5 = all_up_to(5);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for s in &all5 {
        let cs = canonical_form(s).map_err(|e| e.to_string())?;
        for t in &all5 {
            let same = cs == canonical_form(t).map_err(|e| e.to_string())?;
            ensure(same == is_isomorphic(s, t).is_some(), || "canonical form ⇎ isomorphism".into())?;
        }
        let m = s.poset().matrix();
        let relabelled = to_jsl(&permute(&m, &shuffle(&mut rng, m.len())));
        ensure(canonical_form(&relabelled).map_err(|e| e.to_string())? == cs, || {
            "relabelling changed the canonical form".into()
        })?;
    }
    Ok(format!(
        "{} structures, {classified} join-closed subsets classified, zero counterexamples",
        all6.len()
    ))
}

fn main() {
    let dump = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<Criterion> = vec![
        ("builtin fidelity", Box::new(criterion_1)),
        ("forbidden substructure ⇒ non-o-modular, n≤7", Box::new(criterion_2)),
        ("non-o-modular ⇒ semi-strong M2/M4 with full pipeline, n≤7", Box::new(criterion_3)),
        ("biconditional under lu strength, n≤7", Box::new(|| criterion_4(dump.path()))),
        ("strict strength experiment", Box::new(|| criterion_5(dump.path()))),
        ("enumeration counts", Box::new(criterion_6)),
        ("oracle equivalence", Box::new(criterion_7)),
        ("property suites", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.2}s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
