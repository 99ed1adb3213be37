//! Worked-example data shipped with the binary. Any file argument of the
//! form `@name` refers to one of these.

pub const FIXTURES: &[(&str, &str)] = &[
    ("ko_10x10", include_str!("../fixtures/ko_10x10.json")),
    ("ko_rep", include_str!("../fixtures/ko_rep.json")),
    ("ko_pdp_rep", include_str!("../fixtures/ko_pdp_rep.json")),
    ("example_6x6", include_str!("../fixtures/example_6x6.json")),
    ("example_6x6_fix15", include_str!("../fixtures/example_6x6_fix15.json")),
    ("example_6x6_fix51", include_str!("../fixtures/example_6x6_fix51.json")),
    ("example_6x6_fixed", include_str!("../fixtures/example_6x6_fixed.json")),
    ("doubled_12x12", include_str!("../fixtures/doubled_12x12.json")),
    ("doubled_12x12_printed", include_str!("../fixtures/doubled_12x12_printed.json")),
    ("doubled_rep", include_str!("../fixtures/doubled_rep.json")),
    ("example_4x4", include_str!("../fixtures/example_4x4.json")),
    ("example_4x4_forms", include_str!("../fixtures/example_4x4_forms.json")),
    ("trivial", include_str!("../fixtures/trivial.json")),
];

pub fn get(name: &str) -> Option<&'static str> {
    let name = name.trim_end_matches(".json");
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
