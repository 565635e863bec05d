use std::fmt::Write;

use crate::logic::ast::{DialectMismatch, Formula, Pred, Term};
use crate::logic::Dialect;

/// Renders a formula in canonical surface syntax for the dialect.
pub fn print(f: &Formula, dialect: Dialect) -> Result<String, DialectMismatch> {
    f.check_dialect(dialect)?;
    let mut out = String::new();
    write_formula(&mut out, f);
    Ok(out)
}

fn write_formula(out: &mut String, f: &Formula) {
    match f {
        Formula::Atom(pred, args) => write_atom(out, *pred, args),
        Formula::Not(g) => {
            out.push('~');
            write_formula(out, g);
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            out.push(if matches!(f, Formula::Forall(..)) {
                'A'
            } else {
                'E'
            });
            out.push(*v);
            out.push(':');
            write_formula(out, body);
        }
        _ => {
            let (op, a, b) = f.as_binary().expect("binary connective");
            out.push('(');
            write_formula(out, a);
            out.push_str(op.symbol());
            write_formula(out, b);
            out.push(')');
        }
    }
}

fn write_atom(out: &mut String, pred: Pred, args: &[Term]) {
    let infix = match pred {
        Pred::Lt => Some("<"),
        Pred::Le => Some("<="),
        Pred::Gt => Some(">"),
        Pred::Ge => Some(">="),
        Pred::Eq => Some("="),
        _ => None,
    };
    if let Some(rel) = infix {
        let _ = write!(out, "{}{rel}{}", args[0], args[1]);
    } else if pred == Pred::DistEq {
        let _ = write!(
            out,
            "dist({},{})=dist({},{})",
            args[0], args[1], args[2], args[3]
        );
    } else {
        let kw = pred.grid_keyword().expect("grid keyword");
        let _ = write!(out, "{kw}({},{})", args[0], args[1]);
    }
}
