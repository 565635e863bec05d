use std::collections::BTreeMap;

use crate::logic::{Formula, Pred, Term};

/// A finite strict total order `0 < 1 < … < size-1` with interpretations
/// for constant letters and unary function letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteOrderModel {
    size: u32,
    constants: BTreeMap<char, u32>,
    functions: BTreeMap<char, Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("symbol `{0}` has no interpretation")]
    UnassignedSymbol(char),
    #[error("term `{0}` cannot be evaluated: only letters may be applied")]
    UnsupportedTerm(String),
    #[error("element {element} is outside a domain of size {size}")]
    OutOfDomain { element: u32, size: u32 },
    #[error("domain must be nonempty")]
    EmptyDomain,
}

impl FiniteOrderModel {
    pub fn new(size: u32) -> Result<Self, ModelError> {
        if size == 0 {
            return Err(ModelError::EmptyDomain);
        }
        Ok(FiniteOrderModel {
            size,
            constants: BTreeMap::new(),
            functions: BTreeMap::new(),
        })
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn set_constant(&mut self, name: char, element: u32) -> Result<(), ModelError> {
        self.check(element)?;
        self.constants.insert(name, element);
        Ok(())
    }

    /// `table[i]` is the image of element `i`; the table must be total.
    pub fn set_function(&mut self, name: char, table: Vec<u32>) -> Result<(), ModelError> {
        if table.len() != self.size as usize {
            return Err(ModelError::OutOfDomain {
                element: table.len() as u32,
                size: self.size,
            });
        }
        for &v in &table {
            self.check(v)?;
        }
        self.functions.insert(name, table);
        Ok(())
    }

    fn check(&self, element: u32) -> Result<(), ModelError> {
        if element < self.size {
            Ok(())
        } else {
            Err(ModelError::OutOfDomain {
                element,
                size: self.size,
            })
        }
    }
}

/// Tarskian truth of a dictation formula in `m`. Numerals `k` denote
/// `min(k, size-1)`; quantifiers range over the whole domain.
pub fn eval_in_model(
    f: &Formula,
    m: &FiniteOrderModel,
    assignment: &BTreeMap<char, u32>,
) -> Result<bool, ModelError> {
    let mut env: Vec<(char, u32)> = assignment.iter().map(|(k, v)| (*k, *v)).collect();
    eval(f, m, &mut env)
}

fn lookup(env: &[(char, u32)], m: &FiniteOrderModel, name: char) -> Result<u32, ModelError> {
    env.iter()
        .rev()
        .find(|(n, _)| *n == name)
        .map(|(_, v)| *v)
        .or_else(|| m.constants.get(&name).copied())
        .ok_or(ModelError::UnassignedSymbol(name))
}

fn term_value(t: &Term, m: &FiniteOrderModel, env: &[(char, u32)]) -> Result<u32, ModelError> {
    match t {
        Term::Sym(c) => lookup(env, m, *c),
        Term::Num(k) => Ok((*k).min(u64::from(m.size - 1)) as u32),
        Term::App(head, arg) => {
            let Term::Sym(name) = **head else {
                return Err(ModelError::UnsupportedTerm(t.to_string()));
            };
            let table = m
                .functions
                .get(&name)
                .ok_or(ModelError::UnassignedSymbol(name))?;
            let x = term_value(arg, m, env)?;
            Ok(table[x as usize])
        }
    }
}

fn eval(f: &Formula, m: &FiniteOrderModel, env: &mut Vec<(char, u32)>) -> Result<bool, ModelError> {
    Ok(match f {
        Formula::Atom(pred, args) => {
            let a = term_value(&args[0], m, env)?;
            let b = term_value(&args[1], m, env)?;
            match pred {
                Pred::Lt => a < b,
                Pred::Le => a <= b,
                Pred::Gt => a > b,
                Pred::Ge => a >= b,
                Pred::Eq => a == b,
                other => return Err(ModelError::UnsupportedTerm(format!("{other:?}"))),
            }
        }
        Formula::Not(g) => !eval(g, m, env)?,
        Formula::And(a, b) => eval(a, m, env)? && eval(b, m, env)?,
        Formula::Or(a, b) => eval(a, m, env)? || eval(b, m, env)?,
        Formula::Implies(a, b) => !eval(a, m, env)? || eval(b, m, env)?,
        Formula::Iff(a, b) => eval(a, m, env)? == eval(b, m, env)?,
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let universal = matches!(f, Formula::Forall(..));
            let mut result = universal;
            for e in 0..m.size {
                env.push((*v, e));
                let r = eval(body, m, env);
                env.pop();
                if r? != universal {
                    result = !universal;
                    break;
                }
            }
            result
        }
    })
}
