use qlp_core::corpus::all_pairs;
use qlp_core::hadamard::certificates_for_pair;
use qlp_core::{GaussInt, GaussMatrix, LegendrePair, MatrixKind, MatrixRecord, PairRecord, QSeq};

#[test]
fn pair_records_round_trip() {
    for (label, pair) in all_pairs().unwrap() {
        let text = serde_json::to_string(&pair.record()).unwrap();
        let back: PairRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_pair().unwrap(), pair, "{label}");
    }
}

#[test]
fn pair_record_layout() {
    let p = LegendrePair::new("[1,-1]".parse().unwrap(), "[1,i]".parse().unwrap()).unwrap();
    assert_eq!(
        serde_json::to_string(&p.record()).unwrap(),
        r#"{"length":2,"A":"[1,-1]","B":"[1,i]","alpha":"0","beta":"1+i","verified":true}"#
    );
    let tampered = r#"{"length":2,"A":"[1,-1]","B":"[1,i]","alpha":"1","beta":"1+i","verified":true}"#;
    assert!(serde_json::from_str::<PairRecord>(tampered).unwrap().to_pair().is_err());
}

#[test]
fn scalars_and_sequences_round_trip() {
    for z in [GaussInt::new(0, 0), GaussInt::new(-3, 2), GaussInt::new(1, -1), GaussInt::new(0, -7)] {
        let text = serde_json::to_string(&z).unwrap();
        assert_eq!(serde_json::from_str::<GaussInt>(&text).unwrap(), z);
    }
    let s: QSeq = "[1, -i, i, -1]".parse().unwrap();
    assert_eq!(serde_json::to_string(&s).unwrap(), r#""[1,-i,i,-1]""#);
    assert_eq!(serde_json::from_str::<QSeq>(r#""[1,-i,i,-1]""#).unwrap(), s);
}

#[test]
fn matrices_round_trip_in_both_formats() {
    let pair = qlp_core::corpus::pair_for_length(4).unwrap().unwrap();
    let certs = certificates_for_pair(&pair).unwrap();
    for (m, kind) in [(&certs.quaternary, MatrixKind::Quaternary), (&certs.binary, MatrixKind::Binary)] {
        assert_eq!(&GaussMatrix::from_text(&m.to_text().unwrap()).unwrap(), m);
        let record = MatrixRecord::new(m, kind);
        let back: MatrixRecord = serde_json::from_str(&serde_json::to_string(&record).unwrap()).unwrap();
        assert_eq!(&back.to_matrix().unwrap(), m);
    }
}
