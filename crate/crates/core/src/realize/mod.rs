//! Exact counts of realizations over prime fields.

mod count;
mod plane;

pub use count::{
    characteristic_scan, count_chart_points, count_framed, first_combinatorial_frame, naive_count_oracle, pgl3_order,
    strong_total, strong_total_with_frame, CountMode, Problem, RealizationCount, ORACLE_CAP, STANDARD_FRAME,
};
pub use plane::{Plane, ProjPoint};
