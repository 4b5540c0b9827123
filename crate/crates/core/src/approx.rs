//! Dependency erasure. Approximations are simple types over the base
//! family names; they bound hereditary substitution.

use std::fmt;

use thiserror::Error;

use crate::syntax::{AtomicType, Context, CtxType, HatContext, Name, Type, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeApprox {
    Base(Name),
    Arrow(Box<CtxTypeApprox>, Box<TypeApprox>),
}

/// `α[γ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CtxTypeApprox {
    pub approx: TypeApprox,
    pub ctx: CtxApprox,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxEntry {
    pub var: Var,
    /// `None` is the unknown entry `x:_`.
    pub approx: Option<CtxTypeApprox>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CtxApprox(pub Vec<ApproxEntry>);

impl CtxApprox {
    pub fn empty() -> CtxApprox {
        CtxApprox(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, v: &Var) -> Option<usize> {
        self.0.iter().rposition(|e| &e.var == v)
    }

    pub fn hat(&self) -> HatContext {
        HatContext(self.0.iter().map(|e| e.var.clone()).collect())
    }

    /// Relabels the entries positionally with the binders of `hat`.
    pub fn relabel(&self, hat: &HatContext) -> Option<CtxApprox> {
        if hat.len() != self.len() {
            return None;
        }
        let entries = self
            .0
            .iter()
            .zip(&hat.0)
            .map(|(e, v)| ApproxEntry {
                var: v.clone(),
                approx: e.approx.clone(),
            })
            .collect();
        Some(CtxApprox(entries))
    }
}

impl TypeApprox {
    pub fn base(a: &str) -> TypeApprox {
        TypeApprox::Base(Name::from(a))
    }

    pub fn arrow(dom: CtxTypeApprox, cod: TypeApprox) -> TypeApprox {
        TypeApprox::Arrow(Box::new(dom), Box::new(cod))
    }

    /// The approximation in an empty context.
    pub fn plain(self) -> CtxTypeApprox {
        CtxTypeApprox {
            approx: self,
            ctx: CtxApprox::empty(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("cannot erase a sort or kind")]
    NotAType,
}

pub fn erase_type(a: &Type) -> Result<TypeApprox, ApproxError> {
    match a {
        Type::Atomic(p) => match p.head() {
            AtomicType::Const(c) => Ok(TypeApprox::Base(c.clone())),
            _ => Err(ApproxError::NotAType),
        },
        Type::Pi { domain, body, .. } => Ok(TypeApprox::arrow(
            erase_ctx_type(domain)?,
            erase_type(body)?,
        )),
    }
}

pub fn erase_ctx_type(a: &CtxType) -> Result<CtxTypeApprox, ApproxError> {
    Ok(CtxTypeApprox {
        approx: erase_type(&a.ty)?,
        ctx: erase_ctx(&a.ctx)?,
    })
}

/// Pointwise erasure; never yields unknown entries.
pub fn erase_ctx(ctx: &Context) -> Result<CtxApprox, ApproxError> {
    ctx.decls()
        .iter()
        .map(|d| {
            Ok(ApproxEntry {
                var: d.var.clone(),
                approx: Some(erase_ctx_type(&d.ty)?),
            })
        })
        .collect::<Result<_, _>>()
        .map(CtxApprox)
}

// ---------------------------------------------------------------------------
// Ordering. Labels inside contexts are ignored; only shapes matter.

fn same_shape(a: &TypeApprox, b: &TypeApprox) -> bool {
    match (a, b) {
        (TypeApprox::Base(x), TypeApprox::Base(y)) => x == y,
        (TypeApprox::Arrow(d1, c1), TypeApprox::Arrow(d2, c2)) => {
            same_ctx_type_shape(d1, d2) && same_shape(c1, c2)
        }
        _ => false,
    }
}

fn same_ctx_type_shape(a: &CtxTypeApprox, b: &CtxTypeApprox) -> bool {
    same_shape(&a.approx, &b.approx)
        && a.ctx.len() == b.ctx.len()
        && a.ctx
            .0
            .iter()
            .zip(&b.ctx.0)
            .all(|(x, y)| match (&x.approx, &y.approx) {
                (Some(p), Some(q)) => same_ctx_type_shape(p, q),
                (None, None) => true,
                _ => false,
            })
}

/// Proper sub-occurrence of `a` in `b`, descending into context entries.
pub fn approx_lt(a: &TypeApprox, b: &TypeApprox) -> bool {
    match b {
        TypeApprox::Base(_) => false,
        TypeApprox::Arrow(dom, cod) => approx_leq(a, cod) || occurs_in_ctx_type(a, dom),
    }
}

pub fn approx_leq(a: &TypeApprox, b: &TypeApprox) -> bool {
    same_shape(a, b) || approx_lt(a, b)
}

fn occurs_in_ctx_type(a: &TypeApprox, b: &CtxTypeApprox) -> bool {
    approx_leq(a, &b.approx) || approx_lt_ctx(a, &b.ctx)
}

/// `α < ψ`: `α` occurs in some known entry of `ψ`. Unknown entries are
/// incomparable and never satisfy the order.
pub fn approx_lt_ctx(a: &TypeApprox, psi: &CtxApprox) -> bool {
    psi.0
        .iter()
        .filter_map(|e| e.approx.as_ref())
        .any(|e| occurs_in_ctx_type(a, e))
}

/// `α < β[ψ]` iff `α ≤ β` or `α < ψ`.
pub fn approx_lt_ctx_type(a: &TypeApprox, b: &CtxTypeApprox) -> bool {
    occurs_in_ctx_type(a, b)
}

pub fn node_count(a: &TypeApprox) -> usize {
    match a {
        TypeApprox::Base(_) => 1,
        TypeApprox::Arrow(dom, cod) => 1 + ctx_type_node_count(dom) + node_count(cod),
    }
}

pub fn ctx_type_node_count(a: &CtxTypeApprox) -> usize {
    node_count(&a.approx) + ctx_node_count(&a.ctx)
}

pub fn ctx_node_count(psi: &CtxApprox) -> usize {
    psi.0
        .iter()
        .map(|e| 1 + e.approx.as_ref().map_or(0, ctx_type_node_count))
        .sum()
}

// ---------------------------------------------------------------------------

impl fmt::Display for TypeApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeApprox::Base(a) => write!(f, "{a}"),
            TypeApprox::Arrow(dom, cod) => {
                if matches!(dom.approx, TypeApprox::Arrow(..)) {
                    write!(f, "({})", dom.approx)?;
                } else {
                    write!(f, "{}", dom.approx)?;
                }
                if !dom.ctx.is_empty() {
                    write!(f, "[{}]", dom.ctx)?;
                }
                write!(f, " => {cod}")
            }
        }
    }
}

impl fmt::Display for CtxApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", e.var.name)?;
            if e.var.level.0 > 0 {
                write!(f, "^{}", e.var.level)?;
            }
            match &e.approx {
                Some(a) => write!(f, ":{a}")?,
                None => write!(f, ":_")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for CtxTypeApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.approx, self.ctx)
    }
}
