use std::str::FromStr;

use deltakp::exactdp::{solve_exact, ExactOptions, Variant};
use deltakp::fptas::fptas_solve;
use deltakp::greedy::greedy;
use deltakp::oracle::{brute_force_knapsack, brute_force_standard, DEFAULT_CAP};
use deltakp::ratlp::Rational;
use deltakp::{Instance, Mode, SolveReport};

use crate::CliError;

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub mode: Mode,
    pub epsilon: Option<Rational>,
    pub radius: Option<i64>,
    pub cap: u128,
    pub binarized: bool,
    pub verify_recurrence: bool,
}

impl SolveOptions {
    pub fn new(mode: Mode) -> Self {
        SolveOptions { mode, epsilon: None, radius: None, cap: DEFAULT_CAP, binarized: false, verify_recurrence: false }
    }
}

/// Accepts `p/q` or an integer.
pub fn parse_epsilon(s: &str) -> Result<Rational, CliError> {
    Rational::from_str(s.trim()).map_err(|_| CliError::Epsilon(format!("epsilon must be written p/q, got `{s}`")))
}

pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<SolveReport, CliError> {
    match (opts.mode, &opts.epsilon) {
        (Mode::Fptas, None) => return Err(CliError::Epsilon("mode fptas needs --epsilon".into())),
        (m, Some(_)) if m != Mode::Fptas => {
            return Err(CliError::Epsilon(format!("--epsilon only applies to mode fptas, not {m}")))
        }
        _ => {}
    }
    let knapsack = || match inst {
        Instance::Knapsack(k) => Ok(k),
        Instance::Standard(_) => Err(CliError::Solver(format!("mode {} needs a knapsack instance", opts.mode))),
    };
    let exact = |variant| {
        let eo = ExactOptions { radius_override: opts.radius, verify_recurrence: opts.verify_recurrence };
        solve_exact(inst, variant, eo)
    };
    let report = match opts.mode {
        Mode::Greedy => greedy(knapsack()?)?,
        Mode::Fptas => fptas_solve(knapsack()?, opts.epsilon.as_ref().expect("checked above"))?,
        Mode::ExactLevels => exact(Variant::Levels { binarized: opts.binarized })?,
        Mode::ExactPaths => exact(Variant::Paths)?,
        Mode::Oracle => match inst {
            Instance::Knapsack(k) => brute_force_knapsack(k, opts.cap)?,
            Instance::Standard(s) => brute_force_standard(s, opts.cap)?,
        },
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use deltakp::KnapsackInstance;

    fn three_items() -> Instance {
        KnapsackInstance::from_rows(&[[3, 4, 5]], &[10], &[3, 4, 5], &[1, 1, 1]).unwrap().into()
    }

    #[test]
    fn epsilon_forms() {
        assert_eq!(parse_epsilon("1/4").unwrap(), Rational::new(1.into(), 4.into()));
        assert_eq!(parse_epsilon(" 2/8 ").unwrap(), Rational::new(1.into(), 4.into()));
        assert!(parse_epsilon("0.25").is_err());
        assert!(parse_epsilon("1/0").is_err());
    }

    #[test]
    fn three_items_in_every_mode() {
        for mode in Mode::ALL {
            let mut o = SolveOptions::new(mode);
            if mode == Mode::Fptas {
                o.epsilon = Some(parse_epsilon("1/4").unwrap());
            }
            let r = solve(&three_items(), &o).unwrap();
            match mode {
                Mode::Greedy => assert!(2 * r.value >= 9),
                Mode::Fptas => assert!(r.value >= 7 && r.value <= 9),
                _ => assert_eq!(r.value, 9),
            }
        }
    }

    #[test]
    fn epsilon_iff_fptas() {
        let o = SolveOptions::new(Mode::Fptas);
        assert!(matches!(solve(&three_items(), &o), Err(CliError::Epsilon(_))));
        let mut o = SolveOptions::new(Mode::Oracle);
        o.epsilon = Some(parse_epsilon("1/2").unwrap());
        assert!(matches!(solve(&three_items(), &o), Err(CliError::Epsilon(_))));
        let mut o = SolveOptions::new(Mode::Fptas);
        o.epsilon = Some(parse_epsilon("3/2").unwrap());
        assert_eq!(solve(&three_items(), &o).unwrap_err().exit_code(), crate::exit::EPSILON);
    }

    #[test]
    fn oracle_cap() {
        let mut o = SolveOptions::new(Mode::Oracle);
        o.cap = 4;
        assert_eq!(solve(&three_items(), &o).unwrap_err().exit_code(), crate::exit::CAP);
    }
}
