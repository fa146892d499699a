use qlp_bench::corpus_pair;

#[test]
fn fixtures_are_verified_pairs() {
    for l in [24, 82] {
        let p = corpus_pair(l);
        assert_eq!(p.len(), l);
        assert!(p.is_verified());
    }
}

#[test]
#[should_panic(expected = "corpus length")]
fn unknown_length_panics() {
    corpus_pair(28);
}
