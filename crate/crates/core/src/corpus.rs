//! Reference systems shipped with the crate.

pub const FIB: &str = include_str!("../corpus/fib.trs");
pub const NON_LEFT_LINEAR: &str = include_str!("../corpus/non_left_linear.trs");
pub const NOT_PROPERLY_ORIENTED: &str = include_str!("../corpus/not_properly_oriented.trs");
pub const NOT_RIGHT_STABLE: &str = include_str!("../corpus/not_right_stable.trs");
pub const TYPE4: &str = include_str!("../corpus/type4.trs");
pub const OVERLAPPING: &str = include_str!("../corpus/overlapping.trs");
pub const INFEASIBLE_IF1: &str = include_str!("../corpus/infeasible_if1.trs");
pub const INFEASIBLE_IF2: &str = include_str!("../corpus/infeasible_if2.trs");

/// Every corpus file with its stem.
pub const ALL: &[(&str, &str)] = &[
    ("fib", FIB),
    ("non_left_linear", NON_LEFT_LINEAR),
    ("not_properly_oriented", NOT_PROPERLY_ORIENTED),
    ("not_right_stable", NOT_RIGHT_STABLE),
    ("type4", TYPE4),
    ("overlapping", OVERLAPPING),
    ("infeasible_if1", INFEASIBLE_IF1),
    ("infeasible_if2", INFEASIBLE_IF2),
];
