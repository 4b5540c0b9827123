use mlf_core::contexts::{
    chop_ctx, chop_subst, id_subst, level_of, merge_ctx, merge_subst, well_sorted,
};
use mlf_core::oracle::Generator;
use mlf_core::parse::{parse_context, parse_term, parse_type};
use mlf_core::{alpha_equal, Context, CtxType, Decl, Level, Type, Var};
use proptest::prelude::*;

/// A context of base-typed declarations named `{prefix}{i}` at the given
/// levels, sorted descending.
fn leveled(prefix: &str, mut levels: Vec<u32>) -> Context {
    levels.sort_unstable_by(|a, b| b.cmp(a));
    let decls = levels
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            Decl::new(
                Var::new(&format!("{prefix}{i}"), l),
                CtxType::plain(Type::constant("a")),
            )
        })
        .collect();
    Context::new(decls).unwrap()
}

fn levels() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..4, 0..6)
}

fn names(c: &Context) -> Vec<String> {
    c.vars().map(|v| v.to_string()).collect()
}

proptest! {
    #[test]
    fn merge_is_sorted_and_keeps_both_orders(l in levels(), r in levels()) {
        let (a, b) = (leveled("a", l), leveled("b", r));
        let m = merge_ctx(&a, &b).unwrap();
        prop_assert!(well_sorted(&m));
        prop_assert_eq!(m.len(), a.len() + b.len());
        let from_a: Vec<String> = names(&m).into_iter().filter(|n| n.starts_with('a')).collect();
        let from_b: Vec<String> = names(&m).into_iter().filter(|n| n.starts_with('b')).collect();
        prop_assert_eq!(from_a, names(&a));
        prop_assert_eq!(from_b, names(&b));
        prop_assert_eq!(level_of(&m), level_of(&a).max(level_of(&b)));
    }

    #[test]
    fn merge_with_empty_is_identity(l in levels()) {
        let a = leveled("a", l);
        prop_assert_eq!(merge_ctx(&a, &Context::empty()).unwrap(), a.clone());
        prop_assert_eq!(merge_ctx(&Context::empty(), &a).unwrap(), a);
    }

    #[test]
    fn chop_keeps_a_prefix_at_or_above(l in levels(), n in 0u32..5) {
        let a = leveled("a", l);
        let c = chop_ctx(&a, Level(n));
        prop_assert!(c.vars().all(|v| v.level >= Level(n)));
        prop_assert_eq!(&a.decls()[..c.len()], c.decls());
        prop_assert!(a.decls()[c.len()..].iter().all(|d| d.var.level < Level(n)));
        prop_assert_eq!(chop_ctx(&c, Level(n)), c.clone());
        prop_assert_eq!(chop_ctx(&a, Level(0)), a);
    }

    #[test]
    fn chop_distributes_over_merge(l in levels(), r in levels(), n in 0u32..5) {
        let (a, b) = (leveled("a", l), leveled("b", r));
        let n = Level(n);
        let lhs = chop_ctx(&merge_ctx(&a, &b).unwrap(), n);
        let rhs = merge_ctx(&chop_ctx(&a, n), &chop_ctx(&b, n)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_merge_follows_domain_merge(l in levels(), r in levels(), n in 0u32..5) {
        let (a, b) = (leveled("a", l), leveled("b", r));
        let (s, dom) = merge_subst(&id_subst(&a.hat()), &a, &id_subst(&b.hat()), &b).unwrap();
        prop_assert_eq!(&dom, &merge_ctx(&a, &b).unwrap());
        prop_assert_eq!(&s, &id_subst(&dom.hat()));
        let (cs, cdom) = chop_subst(&s, &dom, Level(n)).unwrap();
        prop_assert_eq!(&cdom, &chop_ctx(&dom, Level(n)));
        prop_assert_eq!(cs, id_subst(&cdom.hat()));
    }

    #[test]
    fn merging_a_clash_is_rejected(l in prop::collection::vec(0u32..4, 1..5)) {
        let a = leveled("a", l);
        prop_assert!(merge_ctx(&a, &a).is_err());
    }

    #[test]
    fn printing_round_trips(seed in any::<u64>(), size in 1usize..12, level in 0u32..3) {
        let inst = Generator::new(seed, size, level).instance();
        let ctx = if inst.ctx.is_empty() {
            Context::empty()
        } else {
            parse_context(&inst.ctx.to_string()).unwrap()
        };
        prop_assert!(alpha_equal(&ctx, &inst.ctx), "context {}", inst.ctx);
        let m = parse_term(&inst.term.to_string(), &ctx).unwrap();
        prop_assert!(alpha_equal(&m, &inst.term), "term {}", inst.term);
        let a = parse_type(&inst.ty.to_string(), &ctx).unwrap();
        prop_assert!(alpha_equal(&a, &inst.ty), "type {}", inst.ty);
    }

    #[test]
    fn substitutions_print_and_parse_back(seed in any::<u64>()) {
        let inst = Generator::new(seed, 8, 2).simsub_instance();
        let scope = if inst.ctx.is_empty() {
            Context::empty()
        } else {
            parse_context(&inst.ctx.to_string()).unwrap()
        };
        let s = mlf_core::parse::parse_subst(&inst.subst.to_string(), &scope).unwrap();
        prop_assert!(alpha_equal(&s, &inst.subst), "subst {}", inst.subst);
    }
}
