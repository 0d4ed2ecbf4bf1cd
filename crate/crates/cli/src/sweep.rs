//! The sweep subcommand: one CSV row per grid point, rows computed in
//! parallel, written in order.

use num_complex::Complex64;

use qcat_core::par;
use qcat_core::states::StateKind;

use crate::output::{csv, fmt_f64, write_table};
use crate::rows::{evaluate, linspace, OutputField};
use crate::{usage_error, SweepArgs, SweepVar};

pub fn run(args: SweepArgs) -> i32 {
    if args.steps < 2 {
        return usage_error("--steps must be at least 2");
    }
    if !args.from.is_finite() || !args.to.is_finite() || args.from >= args.to {
        return usage_error("--from must be strictly less than --to");
    }
    let outputs = match OutputField::parse_list(&args.outputs) {
        Ok(outputs) if !outputs.is_empty() => outputs,
        Ok(_) => return usage_error("--outputs must name at least one column"),
        Err(err) => return usage_error(err),
    };

    let kind = args.kind.into();
    let values = linspace(args.from, args.to, args.steps);
    let table = match args.var {
        SweepVar::Alpha => {
            let Some(fixed_q) = args.q else {
                return usage_error("sweeping alpha requires a fixed --q");
            };
            if args.alpha_re.is_some() || args.alpha_im.is_some() {
                return usage_error("--alpha-re/--alpha-im conflict with --var alpha");
            }
            emit(&values, "alpha", kind, &outputs, |a| {
                (fixed_q, Complex64::new(a, 0.0))
            })
        }
        SweepVar::Q => {
            let Some(alpha_re) = args.alpha_re else {
                return usage_error("sweeping q requires a fixed --alpha-re");
            };
            if args.q.is_some() {
                return usage_error("--q conflicts with --var q");
            }
            let alpha = Complex64::new(alpha_re, args.alpha_im.unwrap_or(0.0));
            emit(&values, "q", kind, &outputs, move |q| (q, alpha))
        }
    };

    match write_table(args.out.as_deref(), &table) {
        Ok(()) => 0,
        Err(err) => usage_error(err),
    }
}

fn emit<F>(
    values: &[f64],
    variable: &str,
    kind: StateKind,
    outputs: &[OutputField],
    point: F,
) -> String
where
    F: Fn(f64) -> (f64, Complex64) + Send + Sync,
{
    let mut header = vec![variable.to_string()];
    header.extend(outputs.iter().map(|f| f.name().to_string()));
    let rows: Vec<Vec<String>> = par::map(values, |v| {
        let (q, alpha) = point(*v);
        let mut row = vec![fmt_f64(*v)];
        row.extend(evaluate(kind, q, alpha, outputs).iter().map(|c| c.render()));
        row
    });
    csv(&header, &rows)
}
