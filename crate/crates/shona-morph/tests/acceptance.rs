//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use shona_morph::core::{
    annotate, compute_metrics, Analyzer, FeatureKey, Lexicon, MorphFeatureBag, NounClass, Number, Pos, Provenance,
    RuleTables, Tense, TokenAnnotation,
};
use shona_morph::{export_json, parse_annotations, seed_lexicon, Format};

use common::{bin, random_bag, random_pair, random_text, seed_path, testdata};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
/// token, lemma, POS, category detail, features; `None` = not checked
type Row = (
    &'static str,
    Option<&'static str>,
    Pos,
    Option<&'static str>,
    &'static str,
);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bag(s: &str) -> MorphFeatureBag {
    MorphFeatureBag::parse(s).unwrap()
}

fn sample_sentence() -> Outcome {
    let start = Instant::now();
    let lex = seed_lexicon();
    let rows = annotate("Mwana iri kumhanya mumunda", &lex, &RuleTables::shona());
    let elapsed = start.elapsed();
    let expected: [Row; 4] = [
        (
            "Mwana",
            Some("ana"),
            Pos::Noun,
            Some("Mupanda 1"),
            "NounClass=1|Rule=True",
        ),
        ("iri", None, Pos::Verb, None, "Rule=True|SC=i|Tense=None"),
        (
            "kumhanya",
            Some("mhanya"),
            Pos::Verb,
            None,
            "Rule=True|SC=ku|Tense=None",
        ),
        (
            "mumunda",
            Some("munda"),
            Pos::Noun,
            Some("Mupanda 18"),
            "NounClass=18|Locative=True",
        ),
    ];
    ensure(rows.len() == 4, || format!("{} rows", rows.len()))?;
    for (a, (token, lemma, pos, detail, features)) in rows.iter().zip(expected) {
        ensure(a.token == token, || format!("token {:?} != {token:?}", a.token))?;
        ensure(lemma.is_none_or(|l| a.lemma == l), || {
            format!("{token}: lemma {:?}", a.lemma)
        })?;
        ensure(a.pos == pos, || format!("{token}: pos {:?}", a.pos))?;
        ensure(detail.is_none_or(|d| a.category_detail == d), || {
            format!("{token}: detail {:?}", a.category_detail)
        })?;
        ensure(a.morph_features == bag(features), || {
            format!("{token}: features {}", a.morph_features)
        })?;
    }
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{elapsed:?}"))
}

fn ndichakupai() -> Outcome {
    let a = &annotate("ndichakupai", &seed_lexicon(), &RuleTables::shona())[0];
    let f = &a.morph_features;
    ensure(a.pos == Pos::Verb, || format!("pos {:?}", a.pos))?;
    ensure(f.sc.as_deref() == Some("ndi"), || format!("SC {:?}", f.sc))?;
    ensure(f.tense == Some(Tense::Cha), || format!("Tense {:?}", f.tense))?;
    ensure(f.root.as_deref() == Some("kupa") && a.lemma == "kupa", || {
        format!("root {:?}, lemma {:?}", f.root, a.lemma)
    })?;
    Ok(f.serialize())
}

fn vakadzi() -> Outcome {
    let a = &annotate("Vakadzi", &seed_lexicon(), &RuleTables::shona())[0];
    ensure(a.lemma == "kadzi", || format!("lemma {:?}", a.lemma))?;
    ensure(a.category_detail == "Mupanda 2", || {
        format!("detail {:?}", a.category_detail)
    })?;
    ensure(a.number == Number::Plural, || format!("number {:?}", a.number))?;
    // the rule cascade alone agrees with the lexicon record
    let r = &annotate("Vakadzi", &Lexicon::new(), &RuleTables::shona())[0];
    ensure(
        (r.lemma.as_str(), r.category_detail.as_str(), r.number) == ("kadzi", "Mupanda 2", Number::Plural),
        || format!("rules alone: {r:?}"),
    )?;
    Ok(String::new())
}

fn class_9_10() -> Outcome {
    let tables = RuleTables::shona();
    for (name, lex) in [("seed", seed_lexicon()), ("empty", Lexicon::new())] {
        let a = &annotate("mbudzi", &lex, &tables)[0];
        ensure(a.morph_features.noun_class == NounClass::new(9), || {
            format!("{name} lexicon: {}", a.morph_features)
        })?;
    }
    let gold = annotate("dziva mbudzi", &Lexicon::new(), &tables);
    ensure(gold[0].morph_features.noun_class == NounClass::new(10), || {
        format!("dziva: {}", gold[0].morph_features)
    })?;
    let mut system = gold.clone();
    system[0].morph_features.noun_class = NounClass::new(9);
    let report = compute_metrics(&system, &gold).map_err(|e| e.to_string())?;
    let expected: BTreeMap<(u8, u8), usize> = [((10, 9), 1)].into();
    ensure(report.noun_class_confusions == expected, || {
        format!("{:?}", report.noun_class_confusions)
    })?;
    Ok(String::new())
}

/// Counting oracle written independently of `compute_metrics`.
fn oracle(system: &[TokenAnnotation], gold: &[TokenAnnotation]) -> [f64; 5] {
    let n = system.len() as f64;
    let count = |p: Provenance| system.iter().filter(|a| a.provenance == p).count() as f64;
    let analyzed: Vec<(&TokenAnnotation, &TokenAnnotation)> = system
        .iter()
        .zip(gold)
        .filter(|(s, _)| !(s.pos == Pos::X && s.morph_features.is_empty()))
        .collect();
    let m = analyzed.len() as f64;
    let pa = analyzed.iter().filter(|(s, g)| s.pos == g.pos).count() as f64;
    let ma = analyzed
        .iter()
        .filter(|(s, g)| s.lemma == g.lemma && s.morph_features.serialize() == g.morph_features.serialize())
        .count() as f64;
    let pct = |x: f64, d: f64| if d == 0.0 { 0.0 } else { x * 100.0 / d };
    [
        pct(count(Provenance::Lexicon), n),
        pct(count(Provenance::Rule), n),
        pct(pa, m),
        pct(ma, m),
        pct(count(Provenance::Unknown), n),
    ]
}

fn metric_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5e0a);
    let mut tokens = 0;
    for corpus in 0..100 {
        let n = rng.gen_range(1..=1000);
        tokens += n;
        let (system, gold) = random_pair(&mut rng, n);
        let r = compute_metrics(&system, &gold).map_err(|e| e.to_string())?;
        let got = [r.lc, r.rc, r.pa, r.ma, r.unknown_rate];
        let want = oracle(&system, &gold);
        for (name, (g, w)) in ["LC", "RC", "PA", "MA", "unknown_rate"]
            .iter()
            .zip(got.iter().zip(want))
        {
            ensure((g - w).abs() <= 1e-9, || {
                format!("corpus {corpus} ({n} tokens): {name} {g} vs oracle {w}")
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{tokens} tokens, {elapsed:?}"))
}

fn desk_gold() -> Outcome {
    let out = Command::new(bin())
        .arg("eval")
        .arg("--lexicon")
        .arg(seed_path())
        .arg("--input")
        .arg(testdata("desk_corpus.txt"))
        .arg("--gold")
        .arg(testdata("desk_gold.jsonl"))
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success(), || {
        format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
    })?;
    for row in [
        "Overall POS Accuracy (PA) | 100.0 |",
        "Morphological Accuracy (MA) | 100.0 |",
    ] {
        ensure(stdout.contains(row), || format!("missing {row:?} in\n{stdout}"))?;
    }
    let totals = stdout
        .lines()
        .find(|l| l.starts_with("Tokens:"))
        .unwrap_or_default()
        .to_string();
    ensure(totals.contains("total 52,"), || totals.clone())?;
    Ok(totals)
}

fn export_bytes(a: &[TokenAnnotation], format: Format) -> Vec<u8> {
    let mut out = Vec::new();
    export_json(a, &mut out, format).unwrap();
    out
}

fn round_trip_determinism() -> Outcome {
    let analyzer = Arc::new(Analyzer::new(seed_lexicon(), RuleTables::shona()));
    let mut rng = StdRng::seed_from_u64(7);
    let text = random_text(&mut rng, 10_000);

    let first = analyzer.annotate(&text);
    let second = analyzer.annotate(&text);
    ensure(first.len() >= 10_000, || format!("{} tokens", first.len()))?;
    for format in [Format::JsonArray, Format::Jsonl] {
        let bytes = export_bytes(&first, format);
        ensure(bytes == export_bytes(&second, format), || {
            format!("{format:?}: two runs differ")
        })?;
        let parsed = parse_annotations(&bytes).map_err(|e| e.to_string())?;
        ensure(parsed == first, || format!("{format:?}: parse changed the annotations"))?;
        ensure(export_bytes(&parsed, format) == bytes, || {
            format!("{format:?}: re-export differs")
        })?;
    }

    let texts: Vec<String> = (0..8).map(|_| random_text(&mut rng, 2_000)).collect();
    let serial: Vec<_> = texts.iter().map(|t| analyzer.annotate(t)).collect();
    let parallel: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = texts
            .iter()
            .map(|t| {
                let analyzer = Arc::clone(&analyzer);
                s.spawn(move || analyzer.annotate(t))
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    ensure(serial == parallel, || "8-thread output differs from serial".into())?;
    Ok(format!("{} tokens", first.len()))
}

fn feature_laws() -> Outcome {
    let mut rng = StdRng::seed_from_u64(42);
    for i in 0..10_000 {
        let b = random_bag(&mut rng);
        let text = b.serialize();
        let back = MorphFeatureBag::parse(&text).map_err(|e| format!("bag {i} {text:?}: {e}"))?;
        ensure(back == b, || format!("bag {i}: {text:?} parsed to {back:?}"))?;
        let order: Vec<usize> = text
            .split('|')
            .filter(|p| !p.is_empty())
            .map(|p| {
                let key: FeatureKey = p.split('=').next().unwrap().parse().unwrap();
                FeatureKey::CANONICAL.iter().position(|k| *k == key).unwrap()
            })
            .collect();
        ensure(order.windows(2).all(|w| w[0] < w[1]), || {
            format!("bag {i}: {text:?} out of order")
        })?;
    }
    Ok("10000 bags".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("sample sentence golden rows", sample_sentence),
        ("ndichakupai decomposition", ndichakupai),
        ("Vakadzi gold record", vakadzi),
        ("mbudzi class 9 and (10,9) confusion cell", class_9_10),
        ("metric oracle on 100 random corpora", metric_oracle),
        ("desk-scale gold through CLI eval", desk_gold),
        ("round trip, determinism, 8 threads", round_trip_determinism),
        ("feature-string laws on 10000 bags", feature_laws),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, criterion) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(criterion)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) if detail.is_empty() => println!("PASS  {name}"),
            Ok(detail) => println!("PASS  {name} ({detail})"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "{}/{} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
