#![allow(dead_code)]

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use shona_morph::core::{
    Aspect, CliticType, Deriv, MorphFeatureBag, NounClass, Number, Pos, Provenance, Tense, TokenAnnotation,
};

pub fn testdata(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("testdata").join(name)
}

pub fn seed_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/seed_lexicon.json")
}

pub fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_shona-morph"))
}

const LETTERS: &[u8] = b"abcdefghijklmnoprstuvwyz";

pub fn morpheme(rng: &mut impl Rng) -> String {
    let len = rng.gen_range(1..=6);
    (0..len).map(|_| *LETTERS.choose(rng).unwrap() as char).collect()
}

pub fn random_bag(rng: &mut impl Rng) -> MorphFeatureBag {
    let maybe = |rng: &mut _| -> bool { Rng::gen_bool(rng, 0.4) };
    MorphFeatureBag {
        noun_class: maybe(rng).then(|| NounClass::new(rng.gen_range(1..=18)).unwrap()),
        locative: maybe(rng),
        rule: maybe(rng),
        sc: maybe(rng).then(|| morpheme(rng)),
        oc: maybe(rng).then(|| morpheme(rng)),
        tense: maybe(rng).then(|| *Tense::ALL.choose(rng).unwrap()),
        aspect: maybe(rng).then(|| *[Aspect::Perf, Aspect::Prog].choose(rng).unwrap()),
        deriv: (0..rng.gen_range(0..3))
            .map(|_| *Deriv::ALL.choose(rng).unwrap())
            .collect(),
        root: maybe(rng).then(|| morpheme(rng)),
    }
}

const POS: [Pos; 9] = [
    Pos::Noun,
    Pos::Verb,
    Pos::Adv,
    Pos::Adj,
    Pos::Pron,
    Pos::Cconj,
    Pos::Det,
    Pos::Ideo,
    Pos::Part,
];

/// A well-formed annotation at the given ids with a random provenance.
pub fn random_annotation(rng: &mut impl Rng, sentence_id: u32, token_id: u32) -> TokenAnnotation {
    let provenance = *[Provenance::Lexicon, Provenance::Rule, Provenance::Unknown]
        .choose(rng)
        .unwrap();
    let (pos, mut bag) = match provenance {
        Provenance::Unknown => (Pos::X, MorphFeatureBag::new()),
        _ => (*POS.choose(rng).unwrap(), random_bag(rng)),
    };
    if provenance == Provenance::Rule {
        bag.rule = true;
    }
    let surface = morpheme(rng);
    TokenAnnotation {
        sentence_id,
        token_id,
        lemma: surface.clone(),
        token: surface,
        pos,
        category_detail: String::new(),
        morph_features: bag,
        tense: String::new(),
        aspect: String::new(),
        mood: String::new(),
        person: String::new(),
        number: Number::Unspecified,
        gender: String::new(),
        clitic_type: CliticType::None,
        dependency_relation: String::new(),
        gloss: String::new(),
        comments: String::new(),
        provenance,
    }
}

/// System and gold lists of `n` aligned tokens. Gold copies the system token
/// and then perturbs POS, lemma or features with some probability.
pub fn random_pair(rng: &mut impl Rng, n: usize) -> (Vec<TokenAnnotation>, Vec<TokenAnnotation>) {
    let mut system = Vec::with_capacity(n);
    let (mut sentence, mut token) = (1, 0);
    for _ in 0..n {
        if token > 0 && rng.gen_bool(0.1) {
            sentence += 1;
            token = 0;
        }
        token += 1;
        system.push(random_annotation(rng, sentence, token));
    }
    let gold = system
        .iter()
        .map(|s| {
            let mut g = s.clone();
            if rng.gen_bool(0.2) {
                g.pos = *POS.choose(rng).unwrap();
            }
            if rng.gen_bool(0.15) {
                g.lemma = morpheme(rng);
            }
            if rng.gen_bool(0.2) {
                g.morph_features = random_bag(rng);
            }
            g
        })
        .collect();
    (system, gold)
}

/// Whitespace-joined text of `n` tokens mixing cited forms, random syllable
/// strings and punctuation.
pub fn random_text(rng: &mut impl Rng, n: usize) -> String {
    const WORDS: &[&str] = &[
        "Mwana",
        "iri",
        "kumhanya",
        "mumunda",
        "ndichakupai",
        "Vakadzi",
        "vana",
        "mbudzi",
        "dziva",
        "chikoro",
        "mapanga",
        "muHarare",
        "wakadini",
        "zvako",
        "Mhoro",
        "bro",
        "gwada",
        "tende",
        "nekuti",
        "uyo",
        "sachikoro",
        "fambisa",
        "kupa",
        "Ndiri",
        "kufara",
        ".",
        ",",
        "?",
        "!",
    ];
    const SYLLABLES: &[&str] = &[
        "mu", "va", "chi", "zvi", "ka", "ku", "ndi", "ra", "mba", "nga", "dzi", "e", "o", "wa",
    ];
    let mut words = Vec::with_capacity(n);
    for _ in 0..n {
        if rng.gen_bool(0.6) {
            words.push(WORDS.choose(rng).unwrap().to_string());
        } else {
            let k = rng.gen_range(1..=4);
            words.push((0..k).map(|_| *SYLLABLES.choose(rng).unwrap()).collect());
        }
    }
    words.join(" ")
}
