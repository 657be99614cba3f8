mod common;

use proptest::prelude::*;
use skeinst::braid::{free_reduce, parse_word, MixedBraidWord, Move};

proptest! {
    #![proptest_config(common::config(128))]

    #[test]
    fn render_parse_round_trip(w in common::word(4, 8, 3)) {
        let back = parse_word(&w.to_string(), w.moving()).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn inverse_cancels(w in common::word(4, 8, 3)) {
        let id = MixedBraidWord::identity(w.moving()).unwrap();
        prop_assert_eq!(free_reduce(&w.concat(&w.inverse())), id.clone());
        prop_assert_eq!(free_reduce(&w.inverse().concat(&w)), id);
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn merged_form(w in common::word(4, 8, 3)) {
        for pair in w.letters().windows(2) {
            prop_assert!(pair[0].gen != pair[1].gen);
        }
        prop_assert!(w.letters().iter().all(|l| l.exp != 0));
    }

    #[test]
    fn exponent_sum_is_additive((a, b) in common::word_pair(3, 6, 3)) {
        prop_assert_eq!(a.concat(&b).exponent_sum(), a.exponent_sum() + b.exponent_sum());
        prop_assert_eq!(a.inverse().exponent_sum(), -a.exponent_sum());
    }

    #[test]
    fn stabilize_then_destabilize(w in common::word(3, 6, 2), sign in prop::sample::select(vec![1, -1])) {
        let s = w.apply_move(&Move::Stabilize(sign)).unwrap();
        prop_assert_eq!(s.moving(), w.moving() + 1);
        prop_assert_eq!(s.apply_move(&Move::Destabilize).unwrap(), w);
    }

    #[test]
    fn full_cycle_is_identity(w in common::word(3, 6, 2)) {
        let n = w.letters().len() as isize;
        prop_assert_eq!(w.apply_move(&Move::Cycle(n)).unwrap(), w.clone());
        prop_assert_eq!(w.apply_move(&Move::Cycle(0)).unwrap(), w);
    }
}
