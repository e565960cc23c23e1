use clap::Args;
use serde_json::{json, Value};

use qzx_core::disentangler::{derive, verify_reconstruction};
use qzx_core::matoracle::{residual_order, weyl_check, OracleConfig};
use qzx_core::wordalg::normal_order;
use qzx_core::{Factorization, Variant};

use crate::{resolve_order, CmdResult, Failure, VariantArg};

/// Degree of the graded check on the real-q Weyl pair.
const WEYL_DEGREE: usize = 12;

#[derive(Args)]
pub struct VerifyArgs {
    /// Reconstruction residual and normal-order annihilation (the default).
    #[arg(long)]
    symbolic: bool,
    /// Residual order on random matrices at a numeric q.
    #[arg(long)]
    numeric: bool,
    /// e_q^A e_q^B = e_q^{A+B} on matrix pairs with AB = q^{-1} BA.
    #[arg(long)]
    weyl: bool,
    /// Restrict to one variant; all three by default.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    #[arg(long)]
    order: Option<usize>,
    /// Matrix dimension for the numeric checks.
    #[arg(long, default_value_t = 4)]
    dim: usize,
    /// Numeric value of q; must be positive and not 1.
    #[arg(long, default_value_t = 0.7)]
    q: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

struct Check {
    name: &'static str,
    variant: Option<Variant>,
    passed: bool,
    detail: String,
    measured: Value,
}

fn symbolic(f: &Factorization, checks: &mut Vec<Check>) -> CmdResult {
    let n = f.order;
    let residual = verify_reconstruction(f, n)?;
    let first = residual.first_nonzero();
    checks.push(Check {
        name: "reconstruction",
        variant: Some(f.variant),
        passed: first.is_none(),
        detail: match first {
            None => format!("product minus target is 0 through x^{n}"),
            Some(g) => format!("first nonzero grade {g}"),
        },
        measured: json!({ "order": n, "first_failing_grade": first }),
    });

    let survivors: Vec<usize> = (2..=n).filter(|&g| !normal_order(&f.exponent(g)).is_zero()).collect();
    checks.push(Check {
        name: "normal-order annihilation",
        variant: Some(f.variant),
        passed: survivors.is_empty(),
        detail: match survivors.first() {
            None => format!("grades 2-{n} map to 0 under BA -> qAB"),
            Some(g) => format!("grade {g} survives normal ordering"),
        },
        measured: json!({ "grades": [2, n], "first_failing_grade": survivors.first() }),
    });
    Ok(())
}

fn numeric(f: &Factorization, cfg: &OracleConfig, checks: &mut Vec<Check>) -> CmdResult {
    let r = residual_order(f, cfg)?;
    let residuals: Vec<String> = r.residuals.iter().map(|x| format!("{x:.3e}")).collect();
    checks.push(Check {
        name: "numeric residual order",
        variant: Some(f.variant),
        passed: r.passed,
        detail: format!(
            "dim {} q {} seed {}: residuals [{}] slope {} (need >= {:.1})",
            cfg.dim,
            cfg.q0,
            cfg.seed,
            residuals.join(", "),
            r.slope.map_or("n/a".into(), |s| format!("{s:.3}")),
            r.required_slope
        ),
        measured: serde_json::to_value(&r).expect("report serializes"),
    });
    Ok(())
}

pub fn cmd_verify(args: &VerifyArgs, cap: usize) -> CmdResult {
    let n = resolve_order(args.order, cap)?;
    let run_symbolic = args.symbolic || !(args.numeric || args.weyl);
    let cfg = OracleConfig {
        dim: args.dim,
        q0: args.q,
        seed: args.seed,
        ..OracleConfig::default()
    };
    if args.numeric || args.weyl {
        if args.q == 1.0 {
            return Err(Failure::Usage(
                "q = 1 is not allowed for numeric checks; use `qzx limit` for the classical case".into(),
            ));
        }
        cfg.validate()?;
    }
    let variants: Vec<Variant> = match args.variant {
        Some(v) => vec![v.into()],
        None => vec![Variant::Escalating, Variant::Uniform, Variant::Qbch],
    };

    let mut checks = Vec::new();
    if run_symbolic || args.numeric {
        for &v in &variants {
            let f = derive(v, n)?;
            if run_symbolic {
                symbolic(&f, &mut checks)?;
            }
            if args.numeric {
                numeric(&f, &cfg, &mut checks)?;
            }
        }
    }
    if args.weyl {
        let w = weyl_check(args.dim, args.q, WEYL_DEGREE, args.seed)?;
        checks.push(Check {
            name: "weyl pair",
            variant: None,
            passed: w.passed,
            detail: format!(
                "dim {}: relation {:.1e}, root of unity to degree {} {:.1e}, real q {} to degree {} {:.1e}, random pair {:.1e}",
                w.dim,
                w.relation_residual,
                w.root_of_unity_degree,
                w.root_of_unity_residual,
                w.real_q,
                w.real_q_degree,
                w.real_q_residual,
                w.generic_pair_residual
            ),
            measured: serde_json::to_value(&w).expect("report serializes"),
        });
    }

    let all = checks.iter().all(|c| c.passed);
    if args.json {
        let list: Vec<Value> = checks
            .iter()
            .map(|c| {
                json!({
                    "check": c.name,
                    "variant": c.variant.map(|v| v.to_string()),
                    "passed": c.passed,
                    "detail": c.detail,
                    "measured": c.measured,
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!({ "passed": all, "checks": list })).expect("json"));
    } else {
        for c in &checks {
            let v = c.variant.map(|v| format!(" {v}")).unwrap_or_default();
            println!("{} {}{}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, v, c.detail);
        }
        let failed = checks.iter().filter(|c| !c.passed).count();
        println!("{} of {} checks passed", checks.len() - failed, checks.len());
    }
    if all {
        Ok(())
    } else {
        Err(Failure::Check("verification failed".into()))
    }
}
