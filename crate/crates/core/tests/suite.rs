use oscsum_core::suite::*;

#[test]
fn fast_exact_criteria_and_csv() {
    let suite = Suite::new(Level::Fast);
    let outcomes: Vec<Outcome> = [5u8, 11, 12].iter().map(|&id| suite.run(id).unwrap()).collect();
    assert!(outcomes.iter().all(Outcome::passed), "{outcomes:?}");
    let text = render_csv(&outcomes);
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    let rows: Vec<Vec<String>> = csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), outcomes.iter().map(|o| o.checks.len()).sum::<usize>());
    for r in &rows {
        assert_eq!(r.len(), CSV_HEADER.len());
        let v: f64 = r[4].parse().unwrap();
        assert_eq!(oscsum_core::csv::fmt_f64(v), r[4]);
        assert!(r[7] == "true" || r[7] == "false");
    }
    assert!(rows.iter().any(|r| r[0] == "11" && r[1] == "exppair"));
}

#[test]
fn injected_fault_names_the_hecke_check() {
    let o = Suite::new(Level::Fast).with_fault(6).run(1).unwrap();
    assert!(!o.passed());
    assert_eq!((o.module, o.operation), ("forms", "verify_hecke"));
    assert!(o.first_failure().unwrap().contains("expected <="));
}

#[test]
fn levels_and_ids() {
    assert_eq!("full".parse::<Level>().unwrap(), Level::Full);
    assert!("medium".parse::<Level>().is_err());
    assert!(Suite::new(Level::Fast).run(14).is_err());
    assert_eq!(CRITERIA.iter().map(|c| c.0).collect::<Vec<_>>(), (1..=13).collect::<Vec<_>>());
}
