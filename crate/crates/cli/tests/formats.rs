use itassoc::report::{tree_from_structured, tree_to_structured};
use itassoc::streams::{parse_streams, parse_streams_csv, write_long_csv, RoleMap};
use itassoc_core::{build_tree, mine, render_ascii, render_dot, EventStream, StreamBundle};
use itassoc_testkit::{fixture, generate};
use proptest::prelude::*;

fn roles() -> RoleMap {
    RoleMap::new("trigger one", "trigger two", "consequence")
}

fn wide_csv(bundle: &StreamBundle) -> String {
    // One row per event so equal timestamps keep their order.
    let mut out = String::from("timestamp,trigger one,trigger two,consequence\n");
    let mut rows: Vec<(f64, usize, usize, f64)> = Vec::new();
    for (col, (_, stream)) in bundle.roles().iter().enumerate() {
        for (idx, e) in stream.events.iter().enumerate() {
            rows.push((e.timestamp, col, idx, e.value));
        }
    }
    rows.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    for (t, col, _, v) in rows {
        let cells: Vec<String> = (0..3).map(|c| if c == col { v.to_string() } else { "-".into() }).collect();
        out.push_str(&format!("{t},{}\n", cells.join(",")));
    }
    out
}

fn streams(bundle: &StreamBundle) -> Vec<&EventStream> {
    bundle.roles().iter().map(|(_, s)| *s).collect()
}

proptest! {
    #[test]
    fn long_and_wide_layouts_agree(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let bundle = generate::bundle(&mut rng, 20, 50, -5.0, 5.0);
        let long = parse_streams_csv(&write_long_csv(streams(&bundle)), &roles()).unwrap();
        let wide = parse_streams_csv(&wide_csv(&bundle), &roles()).unwrap();
        prop_assert_eq!(&long, &bundle);
        prop_assert_eq!(&wide, &bundle);
    }

    #[test]
    fn long_layout_round_trip_is_a_fixed_point(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let bundle = generate::bundle(&mut rng, 20, 50, -1e6, 1e6);
        let first = write_long_csv(streams(&bundle));
        let parsed = parse_streams_csv(&first, &roles()).unwrap();
        let second = write_long_csv(streams(&parsed));
        prop_assert_eq!(&first, &second);
        prop_assert_eq!(parse_streams_csv(&second, &roles()).unwrap(), parsed);
    }

    #[test]
    fn shuffled_rows_parse_identically(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let bundle = generate::bundle(&mut rng, 20, 50, 0.0, 10.0);
        let text = write_long_csv(streams(&bundle));
        let mut lines: Vec<&str> = text.lines().skip(1).collect();
        // Deterministic pseudo-random permutation keyed by the seed.
        let mut keyed: Vec<(u64, &str)> = lines
            .iter()
            .enumerate()
            .map(|(i, l)| ((i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ seed, *l))
            .collect();
        keyed.sort();
        lines = keyed.into_iter().map(|(_, l)| l).collect();
        let shuffled = format!("timestamp,stream,value\n{}\n", lines.join("\n"));

        let timestamp = |l: &str| l.split(',').next().unwrap().parse::<f64>().unwrap();
        let mut sorted_lines = lines.clone();
        sorted_lines.sort_by(|x, y| timestamp(x).total_cmp(&timestamp(y)));
        let sorted = format!("timestamp,stream,value\n{}\n", sorted_lines.join("\n"));

        prop_assert_eq!(
            parse_streams_csv(&shuffled, &roles()).unwrap(),
            parse_streams_csv(&sorted, &roles()).unwrap()
        );
    }

    #[test]
    fn dot_output_parses(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let bundle = generate::bundle(&mut rng, 20, 40, 0.0, 20.0);
        let windows = generate::windows(&mut rng, 15.0);
        let cfg = generate::valid_config(&mut rng, windows, 0.0, 20.0);
        let tree = build_tree(&mine(&bundle, &cfg));
        let dot = render_dot(&tree);
        prop_assert!(graphviz_rust::parse(&dot).is_ok(), "{}", dot);
        let structured = tree_to_structured(&tree);
        prop_assert_eq!(tree_from_structured(structured).unwrap(), tree);
    }
}

#[test]
fn parsing_is_deterministic() {
    let a = parse_streams(fixture::WIDE_CSV).unwrap();
    let b = parse_streams(fixture::WIDE_CSV).unwrap();
    assert_eq!(a, b);
}

#[test]
fn awkward_labels_still_give_valid_dot() {
    use itassoc_core::{aggregate, FuzzyInstance, RuleKey};
    let rs = aggregate(&[
        FuzzyInstance { key: RuleKey::new("a \"quoted\" label", "back\\slash", "x/y", "new\nline"), weight: 1.0 },
        FuzzyInstance { key: RuleKey::new("a \"quoted\" label", "b", "x/y", "->"), weight: 0.5 },
    ]);
    let dot = render_dot(&build_tree(&rs));
    graphviz_rust::parse(&dot).expect("valid DOT");
}

#[test]
fn golden_renders_are_distinct() {
    let full = build_tree(&mine(&fixture::bundle(), &fixture::config()));
    let pruned = build_tree(&mine(&fixture::bundle(), &fixture::config().with_thresholds(0.3, 0.0).unwrap()));
    let confident = build_tree(&mine(&fixture::bundle(), &fixture::config().with_thresholds(0.0, 0.9).unwrap()));
    let empty = build_tree(&Default::default());
    let trees = [&full, &pruned, &confident, &empty];
    for i in 0..trees.len() {
        for j in i + 1..trees.len() {
            assert_ne!(trees[i], trees[j]);
            assert_ne!(render_ascii(trees[i]), render_ascii(trees[j]));
            assert_ne!(render_dot(trees[i]), render_dot(trees[j]));
        }
    }
}

#[test]
fn golden_tree_round_trips_byte_identically() {
    let tree = build_tree(&mine(&fixture::bundle(), &fixture::config()));
    let first = serde_json::to_string_pretty(&tree_to_structured(&tree)).unwrap();
    let reparsed = tree_from_structured(serde_json::from_str(&first).unwrap()).unwrap();
    assert_eq!(reparsed, tree);
    assert_eq!(serde_json::to_string_pretty(&tree_to_structured(&reparsed)).unwrap(), first);
}
