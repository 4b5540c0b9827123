//! Ordered contexts and the matching substitution algebra: merge (⋈),
//! chop (⌈·⌉n), lookup and identity substitutions.

use thiserror::Error;

use crate::syntax::{Context, CtxType, Decl, HatContext, Level, Subst, SubstEntry, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("duplicate declaration of {0:?}")]
    DuplicateName(Var),
    #[error("unbound variable {0:?}")]
    UnboundVariable(Var),
    #[error("substitution has {actual} entries but its domain has {expected}")]
    ArityMismatch { expected: usize, actual: usize },
}

/// Least upper bound on `k+1` over the declared levels, 0 when empty.
pub fn level_of(ctx: &Context) -> Level {
    ctx.vars()
        .map(|v| v.level.succ())
        .max()
        .unwrap_or(Level::ZERO)
}

/// Weakly descending levels. Distinctness is enforced by `Context::new`.
pub fn well_sorted(ctx: &Context) -> bool {
    ctx.decls()
        .windows(2)
        .all(|w| w[0].var.level >= w[1].var.level)
}

/// The merge step of mergesort over level-tagged items. When the right
/// input's last level is `≤` the left's, the right item goes last.
pub fn merge_by_level<T: Clone>(left: &[T], right: &[T], level: impl Fn(&T) -> Level) -> Vec<T> {
    let mut out = Vec::with_capacity(left.len() + right.len());
    let (mut i, mut j) = (left.len(), right.len());
    while i > 0 && j > 0 {
        if level(&right[j - 1]) <= level(&left[i - 1]) {
            j -= 1;
            out.push(right[j].clone());
        } else {
            i -= 1;
            out.push(left[i].clone());
        }
    }
    out.extend(left[..i].iter().rev().cloned());
    out.extend(right[..j].iter().rev().cloned());
    out.reverse();
    out
}

/// Drops trailing items below level `n`, keeping the rest unchanged.
pub fn chop_by_level<T>(items: &[T], n: Level, level: impl Fn(&T) -> Level) -> &[T] {
    let mut end = items.len();
    while end > 0 && level(&items[end - 1]) < n {
        end -= 1;
    }
    &items[..end]
}

pub fn merge_ctx(left: &Context, right: &Context) -> Result<Context, ContextError> {
    if let Some(v) = right.vars().find(|v| left.contains(v)) {
        return Err(ContextError::DuplicateName(v.clone()));
    }
    let decls = merge_by_level(left.decls(), right.decls(), |d| d.var.level);
    Ok(Context::from_distinct(decls))
}

/// Merges a single declaration into `ctx`.
pub fn extend_ctx(ctx: &Context, var: Var, ty: CtxType) -> Result<Context, ContextError> {
    merge_ctx(ctx, &Context::from_distinct(vec![Decl::new(var, ty)]))
}

pub fn chop_ctx(ctx: &Context, n: Level) -> Context {
    Context::from_distinct(chop_by_level(ctx.decls(), n, |d| d.var.level).to_vec())
}

pub fn lookup<'a>(ctx: &'a Context, v: &Var) -> Result<&'a CtxType, ContextError> {
    ctx.decls()
        .iter()
        .rev()
        .find(|d| &d.var == v)
        .map(|d| &d.ty)
        .ok_or_else(|| ContextError::UnboundVariable(v.clone()))
}

fn check_arity(sigma: &Subst, domain: &Context) -> Result<(), ContextError> {
    if sigma.len() == domain.len() {
        Ok(())
    } else {
        Err(ContextError::ArityMismatch {
            expected: domain.len(),
            actual: sigma.len(),
        })
    }
}

/// `σ/ψ ⋈ τ/φ`, returning the merged substitution with its merged domain.
pub fn merge_subst(
    sigma: &Subst,
    psi: &Context,
    tau: &Subst,
    phi: &Context,
) -> Result<(Subst, Context), ContextError> {
    check_arity(sigma, psi)?;
    check_arity(tau, phi)?;
    let domain = merge_ctx(psi, phi)?;
    let left: Vec<(&SubstEntry, Level)> = sigma.0.iter().zip(psi.vars().map(|v| v.level)).collect();
    let right: Vec<(&SubstEntry, Level)> = tau.0.iter().zip(phi.vars().map(|v| v.level)).collect();
    let merged = merge_by_level(&left, &right, |p| p.1)
        .into_iter()
        .map(|(e, _)| e.clone())
        .collect();
    Ok((Subst(merged), domain))
}

/// `⌈σ/ψ⌉n`, returning the chopped substitution and `⌈ψ⌉n`.
pub fn chop_subst(
    sigma: &Subst,
    domain: &Context,
    n: Level,
) -> Result<(Subst, Context), ContextError> {
    check_arity(sigma, domain)?;
    let kept = chop_by_level(domain.decls(), n, |d| d.var.level).len();
    Ok((Subst(sigma.0[..kept].to_vec()), chop_ctx(domain, n)))
}

/// `id(Φ̂)`: one renaming entry per binder.
pub fn id_subst(hat: &HatContext) -> Subst {
    Subst(hat.0.iter().cloned().map(SubstEntry::Rename).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{BoundBody, NormalTerm, Type};

    fn decl(name: &str, level: u32, ty: &str) -> Decl {
        Decl::new(Var::new(name, level), CtxType::plain(Type::constant(ty)))
    }

    fn ctx(decls: Vec<Decl>) -> Context {
        Context::new(decls).unwrap()
    }

    #[test]
    fn level_of_examples() {
        assert_eq!(level_of(&Context::empty()), Level(0));
        assert_eq!(level_of(&ctx(vec![decl("x", 0, "a")])), Level(1));
        let f = Decl::new(
            Var::new("F", 1),
            CtxType::new(Type::constant("a"), ctx(vec![decl("y", 0, "b")])),
        );
        assert_eq!(level_of(&ctx(vec![f, decl("x", 0, "c")])), Level(2));
    }

    #[test]
    fn well_sorted_examples() {
        assert!(well_sorted(&ctx(vec![
            decl("x", 2, "a"),
            decl("y", 0, "b")
        ])));
        assert!(!well_sorted(&ctx(vec![
            decl("y", 0, "b"),
            decl("x", 2, "a")
        ])));
        assert!(well_sorted(&ctx(vec![
            decl("x", 1, "a"),
            decl("y", 1, "b")
        ])));
    }

    #[test]
    fn merge_empty_cases() {
        let phi = ctx(vec![decl("y", 0, "b")]);
        assert_eq!(merge_ctx(&Context::empty(), &phi).unwrap(), phi);
        assert_eq!(merge_ctx(&phi, &Context::empty()).unwrap(), phi);
    }

    #[test]
    fn merge_orders_by_level() {
        let x2 = ctx(vec![decl("x", 2, "a")]);
        let y0 = ctx(vec![decl("y", 0, "b")]);
        let expected = ctx(vec![decl("x", 2, "a"), decl("y", 0, "b")]);
        assert_eq!(merge_ctx(&x2, &y0).unwrap(), expected);
        assert_eq!(merge_ctx(&y0, &x2).unwrap(), expected);
    }

    #[test]
    fn merge_equal_levels_puts_right_last() {
        let l = ctx(vec![decl("x", 0, "a")]);
        let r = ctx(vec![decl("y", 0, "b")]);
        let m = merge_ctx(&l, &r).unwrap();
        let names: Vec<_> = m.vars().map(|v| v.name.to_string()).collect();
        assert_eq!(names, ["x", "y"]);
    }

    #[test]
    fn merge_rejects_overlap() {
        let l = ctx(vec![decl("x", 0, "a")]);
        assert_eq!(
            merge_ctx(&l, &l),
            Err(ContextError::DuplicateName(Var::new("x", 0)))
        );
    }

    #[test]
    fn chop_examples() {
        assert_eq!(chop_ctx(&Context::empty(), Level(3)), Context::empty());
        let c = ctx(vec![decl("x", 2, "a"), decl("y", 0, "b")]);
        assert_eq!(chop_ctx(&c, Level(1)), ctx(vec![decl("x", 2, "a")]));
        // a context bounded by k ≤ n chops to nothing
        let c = ctx(vec![decl("x", 1, "a"), decl("y", 0, "b")]);
        assert_eq!(chop_ctx(&c, Level(2)), Context::empty());
        assert_eq!(chop_ctx(&c, Level(0)), c);
    }

    #[test]
    fn lookup_matches_name_and_level() {
        let fty = CtxType::new(Type::constant("a"), ctx(vec![decl("y", 0, "b")]));
        let c = ctx(vec![Decl::new(Var::new("F", 1), fty.clone())]);
        assert_eq!(lookup(&c, &Var::new("F", 1)), Ok(&fty));
        assert!(lookup(&Context::empty(), &Var::new("x", 0)).is_err());
        let c = ctx(vec![decl("x", 0, "a")]);
        assert_eq!(
            lookup(&c, &Var::new("x", 1)),
            Err(ContextError::UnboundVariable(Var::new("x", 1)))
        );
    }

    fn term(c: &str) -> SubstEntry {
        SubstEntry::Term(BoundBody::closed(NormalTerm::constant(c)))
    }

    #[test]
    fn merge_subst_examples() {
        let tau = Subst(vec![SubstEntry::Rename(Var::new("z", 0))]);
        let phi = ctx(vec![decl("y", 0, "b")]);
        let (s, d) = merge_subst(&Subst::empty(), &Context::empty(), &tau, &phi).unwrap();
        assert_eq!((s, d), (tau.clone(), phi.clone()));
        let (s, _) = merge_subst(&tau, &phi, &Subst::empty(), &Context::empty()).unwrap();
        assert_eq!(s, tau);

        let sigma = Subst(vec![term("m")]);
        let psi = ctx(vec![decl("x", 2, "a")]);
        let (s, d) = merge_subst(&sigma, &psi, &tau, &phi).unwrap();
        assert_eq!(
            s,
            Subst(vec![term("m"), SubstEntry::Rename(Var::new("z", 0))])
        );
        assert_eq!(d, ctx(vec![decl("x", 2, "a"), decl("y", 0, "b")]));
        // the other clause, reached by swapping sides
        let (s, _) = merge_subst(&tau, &phi, &sigma, &psi).unwrap();
        assert_eq!(
            s,
            Subst(vec![term("m"), SubstEntry::Rename(Var::new("z", 0))])
        );
    }

    #[test]
    fn merge_subst_checks_arity() {
        let phi = ctx(vec![decl("y", 0, "b")]);
        assert_eq!(
            merge_subst(&Subst::empty(), &phi, &Subst::empty(), &Context::empty()),
            Err(ContextError::ArityMismatch {
                expected: 1,
                actual: 0
            })
        );
    }

    #[test]
    fn chop_subst_examples() {
        let (s, d) = chop_subst(&Subst::empty(), &Context::empty(), Level(1)).unwrap();
        assert!(s.is_empty() && d.is_empty());

        let sigma = Subst(vec![term("m"), SubstEntry::Rename(Var::new("z", 0))]);
        let psi = ctx(vec![decl("x", 2, "a"), decl("y", 0, "b")]);
        let (s, d) = chop_subst(&sigma, &psi, Level(1)).unwrap();
        assert_eq!(s, Subst(vec![term("m")]));
        assert_eq!(d, ctx(vec![decl("x", 2, "a")]));

        let (s, d) = chop_subst(&sigma, &psi, Level(0)).unwrap();
        assert_eq!((s, d), (sigma, psi));
    }

    #[test]
    fn id_subst_unrolls_hat() {
        assert!(id_subst(&HatContext::empty()).is_empty());
        let x = Var::new("x", 0);
        assert_eq!(
            id_subst(&HatContext(vec![x.clone()])),
            Subst(vec![SubstEntry::Rename(x)])
        );
        let f = Var::new("F", 1);
        let y = Var::new("y", 0);
        assert_eq!(
            id_subst(&HatContext(vec![f.clone(), y.clone()])),
            Subst(vec![SubstEntry::Rename(f), SubstEntry::Rename(y)])
        );
    }
}
