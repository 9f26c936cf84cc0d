//! Fixture files bundled into the binary.

pub const FIXTURES: &[(&str, &str)] = &[
    ("point", include_str!("../fixtures/point.alg")),
    ("semisimple2", include_str!("../fixtures/semisimple2.alg")),
    ("loop2", include_str!("../fixtures/loop2.alg")),
    ("loop4", include_str!("../fixtures/loop4.alg")),
    ("loop2_to_loop4", include_str!("../fixtures/loop2_to_loop4.alg")),
    ("a2", include_str!("../fixtures/a2.alg")),
    ("a3line", include_str!("../fixtures/a3line.alg")),
    ("borelA", include_str!("../fixtures/borelA.alg")),
    ("borelB", include_str!("../fixtures/borelB.alg")),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
