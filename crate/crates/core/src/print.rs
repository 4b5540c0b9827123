//! Surface-syntax printing. The output parses back to an α-equal value.

use std::fmt::{self, Display, Formatter};

use crate::syntax::{
    AtomicTerm, AtomicType, BoundBody, Context, CtxType, Decl, HatContext, NormalTerm, Sort, Subst,
    SubstEntry, Type, Var,
};

impl Display for Var {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.level.0 == 0 {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}^{}", self.name, self.level)
        }
    }
}

impl Display for Sort {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Type => "type",
            Sort::Kind => "kind",
        })
    }
}

impl Display for HatContext {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        comma_list(f, &self.0)
    }
}

fn comma_list<T: Display>(f: &mut Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl Display for NormalTerm {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            NormalTerm::Atomic(r) => write!(f, "{r}"),
            NormalTerm::Lam(x, m) => write!(f, "\\{x}. {m}"),
        }
    }
}

impl Display for AtomicTerm {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            AtomicTerm::Var(x, s) => {
                if x.level.0 == 0 && s.is_empty() {
                    write!(f, "{x}")
                } else {
                    write!(f, "{x}[{s}]")
                }
            }
            AtomicTerm::Const(c) => write!(f, "{c}"),
            AtomicTerm::App(h, a) => {
                write!(f, "{h} ")?;
                argument(f, a)
            }
        }
    }
}

/// Arguments print bare when they are a single token.
fn argument(f: &mut Formatter<'_>, b: &BoundBody) -> fmt::Result {
    let simple = b.hat.is_empty()
        && matches!(
            &*b.body,
            NormalTerm::Atomic(AtomicTerm::Var(..) | AtomicTerm::Const(_))
        );
    if simple {
        write!(f, "{}", b.body)
    } else {
        write!(f, "({b})")
    }
}

impl Display for BoundBody {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.hat.is_empty() {
            write!(f, "{}", self.body)
        } else {
            write!(f, "{}. {}", self.hat, self.body)
        }
    }
}

impl Display for SubstEntry {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            SubstEntry::Rename(v) => write!(f, "{v}"),
            SubstEntry::Term(b) if !b.hat.is_empty() => write!(f, "({b})"),
            // a bare level-0 variable would read back as a renaming
            SubstEntry::Term(b) => match &*b.body {
                NormalTerm::Atomic(AtomicTerm::Var(x, s)) if x.level.0 == 0 && s.is_empty() => {
                    write!(f, "{x}[]")
                }
                body => write!(f, "{body}"),
            },
        }
    }
}

impl Display for Subst {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        comma_list(f, &self.0)
    }
}

impl Display for AtomicType {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            AtomicType::Sort(s) => write!(f, "{s}"),
            AtomicType::Const(a) => write!(f, "{a}"),
            AtomicType::App(h, a) => {
                write!(f, "{h} ")?;
                argument(f, a)
            }
        }
    }
}

impl Display for Type {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Type::Atomic(p) => write!(f, "{p}"),
            Type::Pi {
                binder,
                domain,
                body,
            } => write!(f, "{{{binder} : {domain}}} {body}"),
        }
    }
}

impl Display for CtxType {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.ctx.is_empty() {
            write!(f, "{}", self.ty)
        } else {
            write!(f, "{} [{}]", self.ty, self.ctx)
        }
    }
}

impl Display for Decl {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {}", self.var, self.ty)
    }
}

impl Display for Context {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        comma_list(f, self.decls())
    }
}
