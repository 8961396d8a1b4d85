//! Library side of the `cutbranch` command: check reports, reproduction
//! suites and the pieces shared by the subcommands.

pub mod report;
pub mod suites;

use cutbranch_core::instances::Instance;
use cutbranch_core::{Error, RPolytope, Rational};

/// Reads an instance file; a bare polytope is accepted as an unnamed instance.
pub fn read_instance(text: &str) -> Result<Instance<Rational>, Error> {
    match cutbranch_core::json::from_str::<Instance<Rational>>(text) {
        Ok(inst) => Ok(inst),
        Err(first) => {
            let Ok(polytope) = cutbranch_core::json::from_str::<RPolytope>(text) else {
                return Err(first);
            };
            Ok(Instance { name: "polytope".into(), polytope, analytic_hull: None, metadata: Default::default() })
        }
    }
}

/// Exit status: 2 for malformed input or parameters, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Param(_) | Error::Parse(_) | Error::Dimension { .. } | Error::Json(_) | Error::EmptyInput(_) => 2,
        _ => 1,
    }
}
