//! Arm events: disjoint monochromatic paths from a center to the boundary of a domain,
//! five-arm points, the inner event of the U-shaped region and circuit stacks.

mod circuit_stack;
mod estimators;
mod five_arm;
mod inner_event;
mod spec;

pub use circuit_stack::{detect_circuit_stack, CircuitEventRecord, CLOSED_OFFSETS};
pub use estimators::{estimate_pi3, measure_conditional_frequency};
pub use five_arm::{detect_five_arm_point, five_arm_points, FiveArmLanding, FiveArmScanner, StarSide};
pub use inner_event::{detect_ek_prime_inner, has_open_crossing, inner_event, InnerEvent};
pub use spec::{detect_arm_event, Arm, ArmDetector, ArmSpec, Center, Start};
