//! Coverage and accuracy metrics against a gold annotation list.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt::Write;

use thiserror::Error;

use crate::features::FeatureKey;
use crate::pipeline::TokenAnnotation;
use crate::schema::Provenance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlignmentError {
    #[error(
        "position {position}: system token {system:?} does not align with gold token {gold:?} (sentence_id, token_id)"
    )]
    Mismatch {
        position: usize,
        system: Option<(u32, u32)>,
        gold: Option<(u32, u32)>,
    },
}

/// Token counts and the percentages derived from them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvalReport {
    pub tokens_total: usize,
    pub tokens_lexicon: usize,
    pub tokens_rules: usize,
    pub tokens_unknown: usize,
    pub tokens_analyzed: usize,
    pub tokens_pos_correct: usize,
    pub tokens_morph_correct: usize,
    /// Rule-provenance tokens whose POS, lemma and features all match gold.
    pub tokens_rules_correct: usize,
    pub lc: f64,
    pub rc: f64,
    pub pa: f64,
    pub ma: f64,
    pub unknown_rate: f64,
    /// (gold class, predicted class) → count, only for differing classes.
    pub noun_class_confusions: BTreeMap<(u8, u8), usize>,
    /// Per key: (system values matching gold, system values emitted).
    pub feature_agreement: BTreeMap<FeatureKey, (usize, usize)>,
}

/// `100 · part / whole`, or 0 for an empty denominator.
pub fn percent(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        100.0 * part as f64 / whole as f64
    }
}

fn ids(a: &TokenAnnotation) -> (u32, u32) {
    (a.sentence_id, a.token_id)
}

/// Compares position by position; ids must agree at every position.
pub fn compute_metrics(system: &[TokenAnnotation], gold: &[TokenAnnotation]) -> Result<EvalReport, AlignmentError> {
    for position in 0..system.len().max(gold.len()) {
        let s = system.get(position).map(ids);
        let g = gold.get(position).map(ids);
        if s != g {
            return Err(AlignmentError::Mismatch {
                position,
                system: s,
                gold: g,
            });
        }
    }

    let mut r = EvalReport {
        tokens_total: system.len(),
        ..Default::default()
    };
    for (sys, gold) in system.iter().zip(gold) {
        match sys.provenance {
            Provenance::Lexicon => r.tokens_lexicon += 1,
            Provenance::Rule => r.tokens_rules += 1,
            Provenance::Unknown => r.tokens_unknown += 1,
        }
        if let (Some(g), Some(s)) = (gold.morph_features.noun_class, sys.morph_features.noun_class) {
            if g != s {
                *r.noun_class_confusions.entry((g.get(), s.get())).or_default() += 1;
            }
        }
        if sys.provenance == Provenance::Unknown {
            continue;
        }
        let pos_ok = sys.pos == gold.pos;
        let morph_ok = sys.morph_features == gold.morph_features && sys.lemma == gold.lemma;
        r.tokens_pos_correct += usize::from(pos_ok);
        r.tokens_morph_correct += usize::from(morph_ok);
        if sys.provenance == Provenance::Rule && pos_ok && morph_ok {
            r.tokens_rules_correct += 1;
        }
        for key in sys.morph_features.present_keys() {
            let cell = r.feature_agreement.entry(key).or_default();
            cell.1 += 1;
            if sys.morph_features.value(key) == gold.morph_features.value(key) {
                cell.0 += 1;
            }
        }
    }
    r.tokens_analyzed = r.tokens_total - r.tokens_unknown;
    r.lc = percent(r.tokens_lexicon, r.tokens_total);
    r.rc = percent(r.tokens_rules, r.tokens_total);
    r.unknown_rate = percent(r.tokens_unknown, r.tokens_total);
    r.pa = percent(r.tokens_pos_correct, r.tokens_analyzed);
    r.ma = percent(r.tokens_morph_correct, r.tokens_analyzed);
    Ok(r)
}

const ROWS: [(&str, &str); 5] = [
    ("Lexical Coverage (LC)", "Tokens resolved by lexicon lookup"),
    ("Rule Coverage (RC)", "Tokens resolved by the rule cascade"),
    ("Overall POS Accuracy (PA)", "Analyzed tokens with the gold POS tag"),
    (
        "Morphological Accuracy (MA)",
        "Analyzed tokens with the gold lemma and feature set",
    ),
    ("Unknown Token Rate", "Tokens left as X"),
];

/// Plain-text metric table followed by the nonzero confusion cells.
pub fn render_report(report: &EvalReport) -> String {
    let mut out = String::new();
    let scores = [report.lc, report.rc, report.pa, report.ma, report.unknown_rate];
    out.push_str("Metric | Score (%) | Description\n");
    for ((name, description), score) in ROWS.iter().zip(scores) {
        let _ = writeln!(out, "{name} | {score:.1} | {description}");
    }
    let _ = writeln!(
        out,
        "\nTokens: total {}, lexicon {}, rules {}, unknown {}, analyzed {}, pos correct {}, morph correct {}, rule-analyzed correct {}",
        report.tokens_total,
        report.tokens_lexicon,
        report.tokens_rules,
        report.tokens_unknown,
        report.tokens_analyzed,
        report.tokens_pos_correct,
        report.tokens_morph_correct,
        report.tokens_rules_correct,
    );
    if !report.noun_class_confusions.is_empty() {
        out.push_str("\nNoun class confusions:\n");
        for ((gold, predicted), n) in &report.noun_class_confusions {
            let _ = writeln!(out, "gold {gold} → predicted {predicted}: {n}");
        }
    }
    if !report.feature_agreement.is_empty() {
        out.push_str("\nFeature precision:\n");
        for (key, (matched, emitted)) in &report.feature_agreement {
            let _ = writeln!(out, "{key}: {matched}/{emitted} ({:.1})", percent(*matched, *emitted));
        }
    }
    out
}

impl core::fmt::Display for EvalReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&render_report(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::{MorphFeatureBag, NounClass};
    use crate::pipeline::{annotate, TokenAnnotation};
    use crate::schema::Pos;
    use crate::{Lexicon, RuleTables};
    use alloc::vec::Vec;

    fn tok(sentence: u32, id: u32, pos: Pos, features: &str, provenance: Provenance) -> TokenAnnotation {
        let mut a = annotate("x", &Lexicon::new(), &RuleTables::shona()).remove(0);
        a.sentence_id = sentence;
        a.token_id = id;
        a.pos = pos;
        a.lemma = "l".into();
        a.morph_features = MorphFeatureBag::parse(features).unwrap();
        a.provenance = provenance;
        a
    }

    #[test]
    fn lexical_coverage_arithmetic() {
        let system: Vec<_> = (1..=8)
            .map(|i| {
                let p = if i <= 5 { Provenance::Lexicon } else { Provenance::Rule };
                tok(1, i, Pos::Noun, "Rule=True", p)
            })
            .collect();
        let r = compute_metrics(&system, &system).unwrap();
        assert_eq!(r.lc, 62.5);
        assert_eq!(r.rc, 37.5);
    }

    #[test]
    fn identity_case() {
        let system = alloc::vec![
            tok(1, 1, Pos::Noun, "NounClass=1", Provenance::Lexicon),
            tok(1, 2, Pos::Verb, "Rule=True|SC=i|Tense=None", Provenance::Rule),
            tok(1, 3, Pos::X, "", Provenance::Unknown),
            tok(1, 4, Pos::X, "", Provenance::Unknown),
        ];
        let r = compute_metrics(&system, &system).unwrap();
        assert_eq!((r.pa, r.ma, r.unknown_rate), (100.0, 100.0, 50.0));
        assert_eq!(r.tokens_analyzed, 2);
    }

    #[test]
    fn empty_input() {
        let r = compute_metrics(&[], &[]).unwrap();
        assert_eq!(r, EvalReport::default());
    }

    #[test]
    fn misalignment_names_first_divergence() {
        let a = alloc::vec![
            tok(1, 1, Pos::X, "", Provenance::Unknown),
            tok(1, 2, Pos::X, "", Provenance::Unknown)
        ];
        let mut b = a.clone();
        b[1].token_id = 3;
        assert_eq!(
            compute_metrics(&a, &b),
            Err(AlignmentError::Mismatch {
                position: 1,
                system: Some((1, 2)),
                gold: Some((1, 3))
            })
        );
        assert_eq!(
            compute_metrics(&a, &a[..1]),
            Err(AlignmentError::Mismatch {
                position: 1,
                system: Some((1, 2)),
                gold: None
            })
        );
    }

    #[test]
    fn class_confusion_cell() {
        let sys = alloc::vec![tok(1, 1, Pos::Noun, "NounClass=9|Rule=True", Provenance::Rule)];
        let mut gold = sys.clone();
        gold[0].morph_features.noun_class = NounClass::new(10);
        let r = compute_metrics(&sys, &gold).unwrap();
        assert_eq!(r.noun_class_confusions.into_iter().collect::<Vec<_>>(), [((10, 9), 1)]);
    }

    #[test]
    fn render_rows() {
        let r = EvalReport {
            lc: 62.4,
            ..Default::default()
        };
        let text = render_report(&r);
        assert!(text.contains("Lexical Coverage (LC) | 62.4 | "));
        assert!(!text.contains("confusions"));
        let zero = render_report(&EvalReport::default());
        assert_eq!(zero.matches(" | 0.0 | ").count(), 5);
        assert!(!zero.contains("confusions"));

        let mut c = EvalReport::default();
        c.noun_class_confusions.insert((10, 9), 3);
        assert!(render_report(&c).contains("gold 10 → predicted 9: 3"));
    }
}
