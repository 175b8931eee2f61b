//! Small reference sequences used throughout the tests and docs.

use crate::sequence::EventSequence;

/// Twelve events over `A, B, C, D` spanning times 1 to 15.
pub fn abc_stream() -> EventSequence {
    EventSequence::from_pairs(&[
        ("A", 1),
        ("A", 2),
        ("B", 3),
        ("A", 6),
        ("A", 7),
        ("C", 8),
        ("B", 9),
        ("D", 11),
        ("C", 12),
        ("A", 13),
        ("B", 14),
        ("C", 15),
    ])
    .expect("valid sample")
}

/// Twenty-two events over `A, B, C, D` spanning times 1 to 31.
pub fn abcd_stream() -> EventSequence {
    EventSequence::from_pairs(&[
        ("A", 1),
        ("B", 3),
        ("A", 4),
        ("A", 5),
        ("C", 7),
        ("B", 9),
        ("C", 11),
        ("A", 14),
        ("D", 15),
        ("C", 16),
        ("B", 17),
        ("D", 18),
        ("A", 19),
        ("C", 20),
        ("B", 21),
        ("A", 22),
        ("D", 23),
        ("B", 24),
        ("C", 25),
        ("D", 29),
        ("C", 30),
        ("D", 31),
    ])
    .expect("valid sample")
}
