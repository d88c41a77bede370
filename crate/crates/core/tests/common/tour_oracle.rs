//! Expected graph for `fixtures/tour.pf`, obtained by stepping through the
//! script by hand. Each line: script fragment, state after it, arrows drawn.
//!
//! ```text
//! (declarations)     Start -> I01 (flow, first declared node)
//! I01                focus = I01
//! go A02             I01 -> A02 flow;            focus = A02
//! So A03             A02 -> A03;                 focus = A03
//! by C04             C04 -> A03
//! Now E05            focus = E05 (group), no arrow
//! And A06            focus = A06, no arrow
//! by P13             P13 -> A06
//! Now Proof          open S1 with no interior focus
//!   A07              focus = A07, member of S1
//!   by A06           A06 -> A07
//!   go A08           A07 -> A08 flow
//!   go A09           A08 -> A09 flow
//! end                close S1, anchor A09; after the pending `Now`, focus = S1
//! So A10             S1 -> A10
//! Next suppose A11   A10 -> A11 flow; A11 is an assumption
//! Then A12           A11 -> A12
//! then falsum        A12 -> _f1;                 focus = _f1
//! by A10, A03        A10 -> _f1, A03 -> _f1
//! So A14             _f1 -> A14
//! Then A15           A14 -> A15
//! by ?, E05_1        _q1 -> A15, E05_1 -> A15
//! Now cases          open S2
//!   Case A19         A19 assumption, member of S2
//!   Then A20 so A21 so A22   A19 -> A20 -> A21 -> A22
//!   Now Case A16     A16 assumption
//!   Then A17, so A18 A16 -> A17 -> A18
//! end                close S2, anchor A18; focus = S2
//! So A23             S2 -> A23
//! Then A24           A23 -> A24
//! using A25          that arrow is labelled "wolog"; A25 is consumed
//! So A26 by A15      A24 -> A26, A15 -> A26
//! But ? by E05_2     focus = _q2; E05_2 -> _q2
//! ```

pub const DEDUCTIONS: [(&str, &str); 23] = [
    ("A02", "A03"),
    ("C04", "A03"),
    ("P13", "A06"),
    ("A06", "A07"),
    ("S1", "A10"),
    ("A11", "A12"),
    ("A12", "_f1"),
    ("A10", "_f1"),
    ("A03", "_f1"),
    ("_f1", "A14"),
    ("A14", "A15"),
    ("_q1", "A15"),
    ("E05_1", "A15"),
    ("A19", "A20"),
    ("A20", "A21"),
    ("A21", "A22"),
    ("A16", "A17"),
    ("A17", "A18"),
    ("S2", "A23"),
    ("A23", "A24"),
    ("A24", "A26"),
    ("A15", "A26"),
    ("E05_2", "_q2"),
];

pub const FLOWS: [(&str, &str); 5] = [
    ("_start", "I01"),
    ("I01", "A02"),
    ("A07", "A08"),
    ("A08", "A09"),
    ("A10", "A11"),
];

pub const ASSUMPTIONS: [&str; 3] = ["A11", "A16", "A19"];
pub const S1_MEMBERS: [&str; 3] = ["A07", "A08", "A09"];
pub const S2_MEMBERS: [&str; 7] = ["A19", "A20", "A21", "A22", "A16", "A17", "A18"];

/// Statement boxes actually drawn: 26 declarations, E05 counting as its
/// three boxes (26 - 1 + 3 = 28), less the consumed label A25.
pub const STATEMENT_BOXES: usize = 27;
pub const QUESTIONS: usize = 2;
pub const FALSUMS: usize = 1;

/// Words, names, `?` and `falsum` in the script, punctuation and comments
/// excluded.
pub const SCRIPT_ITEMS: usize = 74;
