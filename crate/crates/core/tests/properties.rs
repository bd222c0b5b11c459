use genemagic::encoding::{
    complement, encode, hamming_weight, render, xor_reduce, Notation, Nucleotide, Word,
};
use genemagic::entropy::{normalize, Exact};
use genemagic::grid::{parse_grid, serialize_grid, Grid};
use genemagic::hamming::weight_grid;
use genemagic::magic::analyze;
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(Nucleotide::ALL.to_vec()), 1..=max_len)
        .prop_map(|letters| Word::new(letters).unwrap())
}

fn shuffled_grid(n: usize) -> impl Strategy<Value = Grid> {
    let words: Vec<Word> = Word::all_of_length(n).collect();
    let side = 1usize << n;
    Just(words).prop_shuffle().prop_map(move |words| {
        Grid::new(words.chunks(side).map(<[Word]>::to_vec).collect()).unwrap()
    })
}

#[test]
fn dec_is_a_bijection_onto_one_to_four_pow_n() {
    for n in 1..=5u32 {
        let values: Vec<u64> = Word::all_of_length(n as usize)
            .map(|w| encode(&w, Notation::Dec).unwrap())
            .collect();
        let expected: Vec<u64> = (1..=4u64.pow(n)).collect();
        assert_eq!(values, expected, "n={n}");
    }
}

proptest! {
    #[test]
    fn weight_is_xor_popcount(w in word(9)) {
        prop_assert_eq!(hamming_weight(&w), xor_reduce(&w).count_ones());
    }

    #[test]
    fn complement_is_an_involution_preserving_xor(w in word(9)) {
        let c = complement(&w);
        prop_assert_eq!(complement(&c), w.clone());
        prop_assert_eq!(xor_reduce(&c), xor_reduce(&w));
        prop_assert_eq!(hamming_weight(&c), hamming_weight(&w));
    }

    #[test]
    fn notations_agree(w in word(9)) {
        let bin = render(&w, Notation::Bin).unwrap();
        prop_assert_eq!(bin.len(), 2 * w.len());
        let dec = encode(&w, Notation::Dec).unwrap();
        prop_assert_eq!(u64::from_str_radix(&bin, 2).unwrap() + 1, dec);
        let digit = encode(&w, Notation::Digit).unwrap().to_string();
        prop_assert!(digit.chars().all(|d| ('1'..='4').contains(&d)));
        prop_assert_eq!(digit.parse::<Word>().ok(), None);
    }

    #[test]
    fn word_text_round_trip(w in word(12)) {
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }

    #[test]
    fn grid_round_trip(g in shuffled_grid(2)) {
        for notation in [None, Some(Notation::Dec)] {
            let text = serialize_grid(&g, notation).unwrap();
            if notation.is_none() {
                let back = parse_grid(&text).unwrap();
                prop_assert_eq!(back.rows(), g.rows());
            } else {
                prop_assert!(text.lines().any(|l| l.split_whitespace().count() == 4));
            }
        }
    }

    #[test]
    fn normalize_accepts_exactly_magic_grids(g in shuffled_grid(2)) {
        for notation in Notation::ALL {
            let magic = analyze(&g, notation).unwrap().verdicts.magic;
            match normalize(&g, notation) {
                Ok(p) => {
                    prop_assert!(magic);
                    let one = Exact::from_integer(1);
                    prop_assert!(p.row_totals().iter().all(|t| *t == one));
                }
                Err(e) => {
                    prop_assert!(!magic);
                    let is_precondition = matches!(e, genemagic::Error::Precondition(_));
                    prop_assert!(is_precondition);
                }
            }
        }
    }

    #[test]
    fn weights_survive_complementing_every_cell(g in shuffled_grid(3)) {
        let flipped = Grid::new(
            g.rows().iter().map(|r| r.iter().map(complement).collect()).collect(),
        ).unwrap();
        prop_assert_eq!(weight_grid(&g).weights, weight_grid(&flipped).weights);
    }

    #[test]
    fn line_sums_do_not_depend_on_row_order(g in shuffled_grid(2), k in 1usize..4) {
        let mut rows = g.rows().to_vec();
        rows.rotate_left(k);
        let rotated = Grid::new(rows).unwrap();
        let a = analyze(&g, Notation::Dec).unwrap();
        let b = analyze(&rotated, Notation::Dec).unwrap();
        let mut ca: Vec<u128> = a.columns().iter().map(|c| c.sum).collect();
        let mut cb: Vec<u128> = b.columns().iter().map(|c| c.sum).collect();
        ca.sort_unstable();
        cb.sort_unstable();
        prop_assert_eq!(ca, cb);
    }
}
