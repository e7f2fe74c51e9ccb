//! Positive-existential formulas over a ring language with rational-function
//! constants: trees of exists / and / or / eq over polynomial terms, with no
//! negation and no universal quantifier. A `gadget` node tags a divisibility
//! subclause with its kind and argument terms; it is semantically identical
//! to its expansion and lets the verifier apply backend-specific semantic
//! checks without tree-path bookkeeping.

use crate::ratfunc::RationalFunction;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("missing binding for symbol '{0}'")]
    MissingBinding(String),
}

mod rf_text {
    use super::RationalFunction;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(rf: &RationalFunction, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rf.to_text("x"))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RationalFunction, D::Error> {
        let text = String::deserialize(d)?;
        RationalFunction::parse(&text).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Polynomial term over declared symbols and rational-function constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Term {
    Const(#[serde(with = "rf_text")] RationalFunction),
    Var(String),
    Add(Vec<Term>),
    Mul(Vec<Term>),
    Neg(Box<Term>),
    Pow(Box<Term>, u32),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(rf: RationalFunction) -> Term {
        Term::Const(rf)
    }

    pub fn int(n: i64) -> Term {
        Term::Const(RationalFunction::from_i64(n))
    }

    pub fn add(terms: Vec<Term>) -> Term {
        Term::Add(terms)
    }

    pub fn mul(terms: Vec<Term>) -> Term {
        Term::Mul(terms)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Term {
        Term::Neg(Box::new(self))
    }

    pub fn pow(self, e: u32) -> Term {
        Term::Pow(Box::new(self), e)
    }

    pub fn square(self) -> Term {
        self.pow(2)
    }

    /// Exact evaluation under a total assignment of the free symbols.
    pub fn eval(
        &self,
        assignment: &BTreeMap<String, RationalFunction>,
    ) -> Result<RationalFunction, EvalError> {
        match self {
            Term::Const(c) => Ok(c.clone()),
            Term::Var(v) => assignment
                .get(v)
                .cloned()
                .ok_or_else(|| EvalError::MissingBinding(v.clone())),
            Term::Add(ts) => {
                let mut acc = RationalFunction::zero();
                for t in ts {
                    acc = &acc + &t.eval(assignment)?;
                }
                Ok(acc)
            }
            Term::Mul(ts) => {
                let mut acc = RationalFunction::one();
                for t in ts {
                    acc = &acc * &t.eval(assignment)?;
                }
                Ok(acc)
            }
            Term::Neg(t) => Ok(-&t.eval(assignment)?),
            Term::Pow(t, e) => Ok(t.eval(assignment)?.pow(*e)),
        }
    }

    /// Exact evaluation into an unreduced (num, den) pair: no gcd reduction
    /// happens at any node, so evaluating identities with large hidden
    /// cancellations stays polynomial-multiplication bound. The pair
    /// represents num/den with den nonzero.
    pub fn eval_pair(
        &self,
        assignment: &BTreeMap<String, RationalFunction>,
    ) -> Result<(crate::poly::Polynomial, crate::poly::Polynomial), EvalError> {
        self.eval_pair_with(&mut |v| {
            assignment
                .get(v)
                .cloned()
                .ok_or_else(|| EvalError::MissingBinding(v.to_string()))
        })
    }

    /// [`Term::eval_pair`] with a caller-supplied symbol lookup, so bindings
    /// can be materialized lazily.
    pub fn eval_pair_with(
        &self,
        lookup: &mut dyn FnMut(&str) -> Result<RationalFunction, EvalError>,
    ) -> Result<(crate::poly::Polynomial, crate::poly::Polynomial), EvalError> {
        use crate::poly::Polynomial;
        match self {
            Term::Const(c) => Ok((c.num().clone(), c.den().clone())),
            Term::Var(v) => {
                let rf = lookup(v)?;
                Ok((rf.num().clone(), rf.den().clone()))
            }
            Term::Add(ts) => {
                let mut acc = (Polynomial::zero(), Polynomial::one());
                for t in ts {
                    let (n, d) = t.eval_pair_with(lookup)?;
                    acc = if acc.1 == d {
                        (&acc.0 + &n, d)
                    } else {
                        (&(&acc.0 * &d) + &(&n * &acc.1), &acc.1 * &d)
                    };
                }
                Ok(acc)
            }
            Term::Mul(ts) => {
                let mut acc = (Polynomial::one(), Polynomial::one());
                for t in ts {
                    let (n, d) = t.eval_pair_with(lookup)?;
                    acc = (&acc.0 * &n, &acc.1 * &d);
                }
                Ok(acc)
            }
            Term::Neg(t) => {
                let (n, d) = t.eval_pair_with(lookup)?;
                Ok((-&n, d))
            }
            Term::Pow(t, e) => {
                let (n, d) = t.eval_pair_with(lookup)?;
                Ok((n.pow(*e), d.pow(*e)))
            }
        }
    }

    /// Substitute every constant c(t) by c(g); used when emitting formulas
    /// into the function-field model via t -> lambda f.
    pub fn substitute_constants(&self, g: &RationalFunction) -> Term {
        match self {
            Term::Const(c) => Term::Const(c.substitute(g).expect("emission substitution")),
            Term::Var(v) => Term::Var(v.clone()),
            Term::Add(ts) => Term::Add(ts.iter().map(|t| t.substitute_constants(g)).collect()),
            Term::Mul(ts) => Term::Mul(ts.iter().map(|t| t.substitute_constants(g)).collect()),
            Term::Neg(t) => Term::Neg(Box::new(t.substitute_constants(g))),
            Term::Pow(t, e) => Term::Pow(Box::new(t.substitute_constants(g)), *e),
        }
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Const(_) => {}
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Add(ts) | Term::Mul(ts) => {
                for t in ts {
                    t.collect_vars(out);
                }
            }
            Term::Neg(t) | Term::Pow(t, _) => t.collect_vars(out),
        }
    }
}

/// The divisibility gadget kinds the backends emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GadgetKind {
    /// x in m encoded as "exists beta: x = t*beta"; exactly verifiable.
    SemilocalDivisibility,
    /// The real five-squares clause; verified by semantic surrogates.
    RealPhi,
    /// The p-adic isotropy clause; verified by semantic surrogates.
    PadicD,
}

/// Positive-existential formula tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    Exists { vars: Vec<String>, body: Box<Formula> },
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Eq { lhs: Term, rhs: Term },
    Gadget {
        kind: GadgetKind,
        args: Vec<Term>,
        expansion: Box<Formula>,
    },
}

impl Formula {
    pub fn exists(vars: Vec<String>, body: Formula) -> Formula {
        Formula::Exists {
            vars,
            body: Box::new(body),
        }
    }

    pub fn eq(lhs: Term, rhs: Term) -> Formula {
        Formula::Eq { lhs, rhs }
    }

    /// Number of existentially bound variables in the whole tree.
    pub fn existential_count(&self) -> usize {
        match self {
            Formula::Exists { vars, body } => vars.len() + body.existential_count(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(|f| f.existential_count()).sum(),
            Formula::Eq { .. } => 0,
            Formula::Gadget { expansion, .. } => expansion.existential_count(),
        }
    }

    /// Number of equation leaves (gadget expansions included).
    pub fn equation_count(&self) -> usize {
        match self {
            Formula::Exists { body, .. } => body.equation_count(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(|f| f.equation_count()).sum(),
            Formula::Eq { .. } => 1,
            Formula::Gadget { expansion, .. } => expansion.equation_count(),
        }
    }

    /// Total node count, a size measure for the linearity checks.
    pub fn node_count(&self) -> usize {
        match self {
            Formula::Exists { body, .. } => 1 + body.node_count(),
            Formula::And(fs) | Formula::Or(fs) => {
                1 + fs.iter().map(|f| f.node_count()).sum::<usize>()
            }
            Formula::Eq { .. } => 1,
            Formula::Gadget { expansion, .. } => 1 + expansion.node_count(),
        }
    }

    pub fn substitute_constants(&self, g: &RationalFunction) -> Formula {
        match self {
            Formula::Exists { vars, body } => Formula::Exists {
                vars: vars.clone(),
                body: Box::new(body.substitute_constants(g)),
            },
            Formula::And(fs) => {
                Formula::And(fs.iter().map(|f| f.substitute_constants(g)).collect())
            }
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.substitute_constants(g)).collect()),
            Formula::Eq { lhs, rhs } => Formula::Eq {
                lhs: lhs.substitute_constants(g),
                rhs: rhs.substitute_constants(g),
            },
            Formula::Gadget {
                kind,
                args,
                expansion,
            } => Formula::Gadget {
                kind: *kind,
                args: args.iter().map(|t| t.substitute_constants(g)).collect(),
                expansion: Box::new(expansion.substitute_constants(g)),
            },
        }
    }

    /// All symbols appearing in terms, in first-appearance order.
    pub fn term_symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_term_symbols(&mut out);
        out
    }

    fn collect_term_symbols(&self, out: &mut Vec<String>) {
        match self {
            Formula::Exists { body, .. } => body.collect_term_symbols(out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.collect_term_symbols(out);
                }
            }
            Formula::Eq { lhs, rhs } => {
                lhs.collect_vars(out);
                rhs.collect_vars(out);
            }
            Formula::Gadget { expansion, .. } => expansion.collect_term_symbols(out),
        }
    }
}
