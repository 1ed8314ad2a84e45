use specials::fixtures::{fixtures_dir, load_dir, parse_fixtures, verify, FixtureKind};

#[test]
fn every_fixture_replays() {
    let all = load_dir(&fixtures_dir()).unwrap();
    assert!(all.len() >= 30, "only {} fixtures", all.len());
    let mut failures = Vec::new();
    for f in &all {
        let o = verify(f).unwrap_or_else(|e| panic!("{}: {e}", f.id));
        if !o.pass {
            failures.push(format!("{}: {:?}", o.id, o.diffs));
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn mandatory_corpus_is_present() {
    let all = load_dir(&fixtures_dir()).unwrap();
    let ids: Vec<&str> = all.iter().map(|f| f.id.as_str()).collect();
    for id in [
        "a17_10_specials", "d5_2_quiver", "d5_2_ext1", "d5_2_free_expansion", "d14_9_syzygy",
        "d23_18_syzygy", "t3_quiver", "freeT_t3", "freeO_t3", "freeI_t3", "laufer_star_minus3",
        "laufer_star_minus2",
    ] {
        assert!(ids.contains(&id), "missing {id}");
    }
    let b2 = ["T:3", "T:5", "O:5", "O:7", "O:11", "I:7", "I:11", "I:13", "I:17", "I:19", "I:23", "I:29"];
    for g in b2 {
        assert!(
            all.iter().any(|f| f.kind == FixtureKind::SpecialsSet && f.group.as_deref() == Some(g)),
            "no specials set for {g}"
        );
    }
}

#[test]
fn corrupted_payload_fails_with_diff() {
    let text = r#"{"id":"bad","group":"A:17,10","kind":"specials_set","locus":"",
                   "payload":{"specials":["R","S10","S3","S2"]}}"#;
    let f = &parse_fixtures(text).unwrap()[0];
    let o = verify(f).unwrap();
    assert!(!o.pass);
    assert_eq!(o.diffs.len(), 1);
    assert!(o.diffs[0].contains("S1"), "{:?}", o.diffs);
}

#[test]
fn schema_violation_is_an_error() {
    let text = r#"{"id":"bad","group":"D:5,2","kind":"ext1_table","locus":"","payload":{"cells":3}}"#;
    let f = &parse_fixtures(text).unwrap()[0];
    assert!(verify(f).is_err());
}

#[test]
fn corrupted_window_cell_is_reported() {
    let dir = fixtures_dir();
    let mut all = load_dir(&dir).unwrap();
    let f = all.iter_mut().find(|f| f.id == "freeT_t3").unwrap();
    f.payload["table"][0]["12"] = serde_json::json!("9");
    let o = verify(f).unwrap();
    assert!(!o.pass);
    assert_eq!(o.diffs.len(), 1);
}
