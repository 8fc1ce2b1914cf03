mod common;

use std::collections::HashMap;

use modhangul::corpus::{parse_corpus, SHIPPED_CORPUS};
use modhangul::jamo::*;
use modhangul::rules::builtin_profile;
use proptest::prelude::*;
use rand::SeedableRng;
use unicode_normalization::UnicodeNormalization;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn token_text_round_trips(t in common::arb_transcript()) {
        let text = serialize_tokens(&t);
        prop_assert_eq!(parse_tokens(&text).unwrap(), t);
    }

    #[test]
    fn stream_round_trips(t in common::arb_transcript()) {
        prop_assert_eq!(compose(&decompose(&t)).unwrap(), t);
    }

    #[test]
    fn composed_blocks_are_well_formed(t in common::arb_transcript()) {
        for b in compose(&decompose(&t)).unwrap().blocks() {
            prop_assert!(!b.onset().is_vowel());
            prop_assert!(b.nucleus().is_vowel());
            prop_assert!(b.coda().is_none_or(|c| !c.is_vowel()));
            prop_assert!(b.tone().value() <= 5);
        }
    }
}

#[test]
fn ten_thousand_seeded_streams() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..10_000 {
        let t = common::random_transcript(&mut rng);
        assert_eq!(parse_tokens(&serialize_tokens(&t)).unwrap(), t);
        assert_eq!(compose(&decompose(&t)).unwrap(), t);
    }
}

#[test]
fn corpus_outputs_round_trip() {
    for e in parse_corpus(SHIPPED_CORPUS).unwrap() {
        let mut p = builtin_profile(&e.profile).unwrap();
        for (k, v) in &e.options {
            p.set_option(k, v).unwrap();
        }
        let t = p.transcribe(&e.input).unwrap();
        assert_eq!(parse_tokens(&serialize_tokens(&t)).unwrap(), t, "line {}", e.line);
        assert_eq!(compose(&decompose(&t)).unwrap(), t, "line {}", e.line);
    }
}

// jongseong in Unicode order, copied from the code chart
const FINALS: &str = "ㄱㄲㄳㄴㄵㄶㄷㄹㄺㄻㄼㄽㄾㄿㅀㅁㅂㅄㅅㅆㅇㅈㅊㅋㅌㅍㅎ";

#[test]
fn plain_display_matches_unicode_decomposition() {
    // (choseong, jungseong, jongseong) -> precomposed, from NFD of every syllable
    let mut table: HashMap<Vec<char>, char> = HashMap::new();
    for code in 0xAC00u32..=0xD7A3 {
        let s = char::from_u32(code).unwrap();
        table.insert(s.to_string().nfd().collect(), s);
    }
    assert_eq!(table.len(), 11172);
    let conjoining = |compat: char| compat.to_string().nfkd().next().unwrap();
    let mut checked = 0;
    for &c in Consonant::ALL {
        for &v in Vowel::ALL {
            let codas = std::iter::once(None).chain(Consonant::ALL.iter().map(|&k| Some(k)));
            for coda in codas {
                let final_pos = coda.map(|k| FINALS.chars().position(|f| f == k.compat_char()));
                let key: Vec<char> = match final_pos {
                    Some(None) => continue,
                    Some(Some(i)) => vec![
                        conjoining(c.compat_char()),
                        conjoining(v.compat_char()),
                        char::from_u32(0x11A8 + i as u32).unwrap(),
                    ],
                    None => vec![conjoining(c.compat_char()), conjoining(v.compat_char())],
                };
                let block = SyllableBlock::simple(c, v).with_coda(coda.map(JamoToken::onset));
                let shown = to_display_text(&Transcript::word(vec![block]), DisplayPolicy::Plain).text;
                assert_eq!(shown, table[&key].to_string(), "{c}+{v}+{coda:?}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 19 * 21 * 17);
}
