//! Canonical syntax of multi-level contextual LF.
//!
//! Only β-normal objects are representable. Every variable occurrence is a
//! closure `x^n[σ]`; level-0 variables carry the empty substitution. Levels
//! are part of a variable's identity, so `x^0` and `x^1` are unrelated.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub type Name = Arc<str>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Level(pub u32);

impl Level {
    pub const ZERO: Level = Level(0);

    pub fn succ(self) -> Level {
        Level(self.0 + 1)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub name: Name,
    pub level: Level,
}

impl Var {
    pub fn new(name: &str, level: u32) -> Var {
        Var {
            name: Arc::from(name),
            level: Level(level),
        }
    }

    /// A variable with the same level and a name derived from this one that
    /// `taken` rejects.
    pub fn freshen(&self, mut taken: impl FnMut(&Var) -> bool) -> Var {
        let base = self.name.trim_end_matches(|c: char| c.is_ascii_digit());
        let base = if base.is_empty() { "v" } else { base };
        (1u64..)
            .map(|i| Var {
                name: Arc::from(format!("{base}{i}")),
                level: self.level,
            })
            .find(|v| !taken(v))
            .expect("unbounded supply of names")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sort {
    Type,
    Kind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomicType {
    Sort(Sort),
    Const(Name),
    App(Box<AtomicType>, BoundBody),
}

/// Normal types and kinds: `A, B, K ::= P | Πx^n:A[Ψ^n].B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Type {
    Atomic(AtomicType),
    Pi {
        binder: Var,
        domain: Box<CtxType>,
        body: Box<Type>,
    },
}

/// `A[Ψ]`: the type of a variable whose level bounds the levels in `Ψ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CtxType {
    pub ty: Type,
    pub ctx: Context,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomicTerm {
    Var(Var, Subst),
    Const(Name),
    App(Box<AtomicTerm>, BoundBody),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalTerm {
    Atomic(AtomicTerm),
    Lam(Var, Box<NormalTerm>),
}

/// Binder list of an argument or substitution entry, types erased.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HatContext(pub Vec<Var>);

impl HatContext {
    pub fn empty() -> HatContext {
        HatContext(Vec::new())
    }

    /// Least level bound: one more than the highest binder level, 0 when empty.
    pub fn level_bound(&self) -> Level {
        self.0
            .iter()
            .map(|v| v.level.succ())
            .max()
            .unwrap_or(Level::ZERO)
    }

    pub fn contains(&self, v: &Var) -> bool {
        self.0.contains(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `Γ̂.N`, the argument form shared by applications and substitution entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundBody {
    pub hat: HatContext,
    pub body: Box<NormalTerm>,
}

impl BoundBody {
    pub fn new(hat: Vec<Var>, body: NormalTerm) -> BoundBody {
        BoundBody {
            hat: HatContext(hat),
            body: Box::new(body),
        }
    }

    pub fn closed(body: NormalTerm) -> BoundBody {
        BoundBody::new(Vec::new(), body)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubstEntry {
    Term(BoundBody),
    Rename(Var),
}

/// Positional simultaneous substitution; entry `i` instantiates declaration
/// `i` of whatever context it is checked against.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Subst(pub Vec<SubstEntry>);

impl Subst {
    pub fn empty() -> Subst {
        Subst(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[SubstEntry] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl {
    pub var: Var,
    pub ty: CtxType,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("duplicate declaration of {0}")]
pub struct DuplicateDecl(pub Var);

/// Ordered context. The level bound is never stored; see `contexts::level_of`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Context {
    decls: Vec<Decl>,
}

impl Context {
    pub fn empty() -> Context {
        Context { decls: Vec::new() }
    }

    pub fn new(decls: Vec<Decl>) -> Result<Context, DuplicateDecl> {
        let mut seen = BTreeSet::new();
        for d in &decls {
            if !seen.insert(&d.var) {
                return Err(DuplicateDecl(d.var.clone()));
            }
        }
        Ok(Context { decls })
    }

    /// Caller guarantees the declared variables are pairwise distinct.
    pub(crate) fn from_distinct(decls: Vec<Decl>) -> Context {
        debug_assert!(Context::new(decls.clone()).is_ok());
        Context { decls }
    }

    pub fn decls(&self) -> &[Decl] {
        &self.decls
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    pub fn contains(&self, v: &Var) -> bool {
        self.decls.iter().any(|d| &d.var == v)
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.decls.iter().map(|d| &d.var)
    }

    pub fn hat(&self) -> HatContext {
        HatContext(self.vars().cloned().collect())
    }

    pub fn into_decls(self) -> Vec<Decl> {
        self.decls
    }
}

// ---------------------------------------------------------------------------
// Convenience constructors

impl NormalTerm {
    /// `x[·]` as a normal term.
    pub fn var(v: Var) -> NormalTerm {
        NormalTerm::Atomic(AtomicTerm::Var(v, Subst::empty()))
    }

    pub fn closure(v: Var, sigma: Subst) -> NormalTerm {
        NormalTerm::Atomic(AtomicTerm::Var(v, sigma))
    }

    pub fn constant(c: &str) -> NormalTerm {
        NormalTerm::Atomic(AtomicTerm::Const(Arc::from(c)))
    }

    pub fn lam(v: Var, body: NormalTerm) -> NormalTerm {
        NormalTerm::Lam(v, Box::new(body))
    }

    /// Term-size measure used by tests and generators.
    pub fn size(&self) -> usize {
        match self {
            NormalTerm::Atomic(r) => r.size(),
            NormalTerm::Lam(_, m) => 1 + m.size(),
        }
    }
}

impl AtomicTerm {
    pub fn constant(c: &str) -> AtomicTerm {
        AtomicTerm::Const(Arc::from(c))
    }

    pub fn app(self, arg: BoundBody) -> AtomicTerm {
        AtomicTerm::App(Box::new(self), arg)
    }

    /// Applies to arguments with empty hats.
    pub fn apply(self, args: impl IntoIterator<Item = NormalTerm>) -> AtomicTerm {
        args.into_iter()
            .fold(self, |r, a| r.app(BoundBody::closed(a)))
    }

    /// Head and arguments, left to right.
    pub fn spine(&self) -> (&AtomicTerm, Vec<&BoundBody>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let AtomicTerm::App(h, a) = cur {
            args.push(a);
            cur = h;
        }
        args.reverse();
        (cur, args)
    }

    pub fn size(&self) -> usize {
        match self {
            AtomicTerm::Var(_, s) => 1 + s.size(),
            AtomicTerm::Const(_) => 1,
            AtomicTerm::App(r, b) => 1 + r.size() + b.body.size(),
        }
    }
}

impl From<AtomicTerm> for NormalTerm {
    fn from(r: AtomicTerm) -> NormalTerm {
        NormalTerm::Atomic(r)
    }
}

impl Subst {
    pub fn size(&self) -> usize {
        self.0
            .iter()
            .map(|e| match e {
                SubstEntry::Term(b) => b.body.size(),
                SubstEntry::Rename(_) => 1,
            })
            .sum()
    }
}

impl AtomicType {
    pub fn constant(a: &str) -> AtomicType {
        AtomicType::Const(Arc::from(a))
    }

    pub fn app(self, arg: BoundBody) -> AtomicType {
        AtomicType::App(Box::new(self), arg)
    }

    pub fn apply(self, args: impl IntoIterator<Item = NormalTerm>) -> AtomicType {
        args.into_iter()
            .fold(self, |p, a| p.app(BoundBody::closed(a)))
    }

    pub fn head(&self) -> &AtomicType {
        match self {
            AtomicType::App(h, _) => h.head(),
            other => other,
        }
    }
}

impl Type {
    pub fn constant(a: &str) -> Type {
        Type::Atomic(AtomicType::constant(a))
    }

    pub fn sort(s: Sort) -> Type {
        Type::Atomic(AtomicType::Sort(s))
    }

    pub fn pi(binder: Var, domain: CtxType, body: Type) -> Type {
        Type::Pi {
            binder,
            domain: Box::new(domain),
            body: Box::new(body),
        }
    }

    /// Non-dependent level-0 arrow with an empty local context.
    pub fn arrow(binder: Var, domain: Type, body: Type) -> Type {
        Type::pi(binder, CtxType::plain(domain), body)
    }

    /// Final codomain after stripping all Π binders.
    pub fn codomain(&self) -> &AtomicType {
        match self {
            Type::Atomic(p) => p,
            Type::Pi { body, .. } => body.codomain(),
        }
    }

    /// True when the final codomain is the sort `type`, i.e. this is a kind.
    pub fn is_kind(&self) -> bool {
        matches!(self.codomain(), AtomicType::Sort(Sort::Type))
    }
}

impl From<AtomicType> for Type {
    fn from(p: AtomicType) -> Type {
        Type::Atomic(p)
    }
}

impl CtxType {
    pub fn new(ty: Type, ctx: Context) -> CtxType {
        CtxType { ty, ctx }
    }

    pub fn plain(ty: Type) -> CtxType {
        CtxType {
            ty,
            ctx: Context::empty(),
        }
    }
}

impl Decl {
    pub fn new(var: Var, ty: CtxType) -> Decl {
        Decl { var, ty }
    }
}

// ---------------------------------------------------------------------------
// Signatures

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstClass {
    /// `a : K`, a type-family constant.
    Family,
    /// `c : A`, a term constant.
    Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigEntry {
    pub name: Name,
    pub class: ConstClass,
    pub ty: Type,
}

#[derive(Debug, Clone, Default)]
pub struct Signature {
    entries: Vec<SigEntry>,
    index: HashMap<Name, usize>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    /// Appends a declaration; whether it declares a family or a term constant
    /// follows from the sort at the end of its Π-chain.
    pub fn push(&mut self, name: &str, ty: Type) -> Result<(), DuplicateConst> {
        let name: Name = Arc::from(name);
        if self.index.contains_key(&name) {
            return Err(DuplicateConst(name));
        }
        let class = if ty.is_kind() {
            ConstClass::Family
        } else {
            ConstClass::Term
        };
        self.index.insert(name.clone(), self.entries.len());
        self.entries.push(SigEntry { name, class, ty });
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&SigEntry> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    /// Lookup restricted to the first `len` declarations.
    pub fn get_in_prefix(&self, name: &str, len: usize) -> Option<&SigEntry> {
        self.index
            .get(name)
            .filter(|&&i| i < len)
            .map(|&i| &self.entries[i])
    }

    pub fn entries(&self) -> &[SigEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("duplicate constant {0}")]
pub struct DuplicateConst(pub Name);

// ---------------------------------------------------------------------------
// Free variables and variable inventories

/// Syntax with binders whose free variables can be computed.
pub trait Scoped {
    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>);

    /// Every variable mentioned anywhere, bound or free.
    fn collect_all(&self, out: &mut BTreeSet<Var>);

    fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_all(&mut out);
        out
    }
}

fn note(v: &Var, bound: &[Var], out: &mut BTreeSet<Var>) {
    if !bound.contains(v) {
        out.insert(v.clone());
    }
}

impl Scoped for NormalTerm {
    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            NormalTerm::Atomic(r) => r.collect_free(bound, out),
            NormalTerm::Lam(x, m) => {
                bound.push(x.clone());
                m.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    fn collect_all(&self, out: &mut BTreeSet<Var>) {
        match self {
            NormalTerm::Atomic(r) => r.collect_all(out),
            NormalTerm::Lam(x, m) => {
                out.insert(x.clone());
                m.collect_all(out);
            }
        }
    }
}

impl Scoped for AtomicTerm {
    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            AtomicTerm::Var(x, s) => {
                note(x, bound, out);
                s.collect_free(bound, out);
            }
            AtomicTerm::Const(_) => {}
            AtomicTerm::App(r, b) => {
                r.collect_free(bound, out);
                b.collect_free(bound, out);
            }
        }
    }

    fn collect_all(&self, out: &mut BTreeSet<Var>) {
        match self {
            AtomicTerm::Var(x, s) => {
                out.insert(x.clone());
                s.collect_all(out);
            }
            AtomicTerm::Const(_) => {}
            AtomicTerm::App(r, b) => {
                r.collect_all(out);
                b.collect_all(out);
            }
        }
    }
}

impl Scoped for BoundBody {
    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mark = bound.len();
        bound.extend(self.hat.0.iter().cloned());
        self.body.collect_free(bound, out);
        bound.truncate(mark);
    }

    fn collect_all(&self, out: &mut BTreeSet<Var>) {
        out.extend(self.hat.0.iter().cloned());
        self.body.collect_all(out);
    }
}

impl Scoped for Subst {
    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        for e in &self.0 {
            match e {
                SubstEntry::Term(b) => b.collect_free(bound, out),
                SubstEntry::Rename(y) => note(y, bound, out),
            }
        }
    }

    fn collect_all(&self, out: &mut BTreeSet<Var>) {
        for e in &self.0 {
            match e {
                SubstEntry::Term(b) => b.collect_all(out),
                SubstEntry::Rename(y) => {
                    out.insert(y.clone());
                }
            }
        }
    }
}

impl Scoped for AtomicType {
    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        if let AtomicType::App(p, b) = self {
            p.collect_free(bound, out);
            b.collect_free(bound, out);
        }
    }

    fn collect_all(&self, out: &mut BTreeSet<Var>) {
        if let AtomicType::App(p, b) = self {
            p.collect_all(out);
            b.collect_all(out);
        }
    }
}

impl Scoped for Type {
    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Type::Atomic(p) => p.collect_free(bound, out),
            Type::Pi {
                binder,
                domain,
                body,
            } => {
                domain.collect_free(bound, out);
                bound.push(binder.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    fn collect_all(&self, out: &mut BTreeSet<Var>) {
        match self {
            Type::Atomic(p) => p.collect_all(out),
            Type::Pi {
                binder,
                domain,
                body,
            } => {
                out.insert(binder.clone());
                domain.collect_all(out);
                body.collect_all(out);
            }
        }
    }
}

impl Scoped for CtxType {
    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mark = bound.len();
        for d in self.ctx.decls() {
            d.ty.collect_free(bound, out);
            bound.push(d.var.clone());
        }
        self.ty.collect_free(bound, out);
        bound.truncate(mark);
    }

    fn collect_all(&self, out: &mut BTreeSet<Var>) {
        self.ctx.collect_all(out);
        self.ty.collect_all(out);
    }
}

impl Scoped for Context {
    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mark = bound.len();
        for d in self.decls() {
            d.ty.collect_free(bound, out);
            bound.push(d.var.clone());
        }
        bound.truncate(mark);
    }

    fn collect_all(&self, out: &mut BTreeSet<Var>) {
        for d in self.decls() {
            out.insert(d.var.clone());
            d.ty.collect_all(out);
        }
    }
}

/// `FV(Γ̂.N)`.
pub fn free_vars(body: &BoundBody) -> BTreeSet<Var> {
    body.free_vars()
}

// ---------------------------------------------------------------------------
// α-equivalence, optionally modulo η on substitution entries

/// Structural comparison up to consistent renaming of binders. With `eta`
/// set, a renaming entry `y` also equals a term entry that η-contracts to it.
pub(crate) struct Equiv {
    eta: bool,
    left: Vec<Var>,
    right: Vec<Var>,
}

impl Equiv {
    pub(crate) fn new(eta: bool) -> Equiv {
        Equiv {
            eta,
            left: Vec::new(),
            right: Vec::new(),
        }
    }

    fn var(&self, l: &Var, r: &Var) -> bool {
        let li = self.left.iter().rposition(|v| v == l);
        let ri = self.right.iter().rposition(|v| v == r);
        match (li, ri) {
            (Some(a), Some(b)) => a == b,
            (None, None) => l == r,
            _ => false,
        }
    }

    fn bind(&mut self, l: &Var, r: &Var) -> bool {
        if l.level != r.level {
            return false;
        }
        self.left.push(l.clone());
        self.right.push(r.clone());
        true
    }

    fn unbind(&mut self, mark: usize) {
        self.left.truncate(mark);
        self.right.truncate(mark);
    }

    pub(crate) fn normal(&mut self, l: &NormalTerm, r: &NormalTerm) -> bool {
        match (l, r) {
            (NormalTerm::Atomic(a), NormalTerm::Atomic(b)) => self.atomic_term(a, b),
            (NormalTerm::Lam(x, m), NormalTerm::Lam(y, n)) => {
                let mark = self.left.len();
                let ok = self.bind(x, y) && self.normal(m, n);
                self.unbind(mark);
                ok
            }
            _ => false,
        }
    }

    pub(crate) fn atomic_term(&mut self, l: &AtomicTerm, r: &AtomicTerm) -> bool {
        match (l, r) {
            (AtomicTerm::Var(x, s), AtomicTerm::Var(y, t)) => self.var(x, y) && self.subst(s, t),
            (AtomicTerm::Const(c), AtomicTerm::Const(d)) => c == d,
            (AtomicTerm::App(f, a), AtomicTerm::App(g, b)) => {
                self.atomic_term(f, g) && self.body(a, b)
            }
            _ => false,
        }
    }

    pub(crate) fn body(&mut self, l: &BoundBody, r: &BoundBody) -> bool {
        if l.hat.len() != r.hat.len() {
            return false;
        }
        let mark = self.left.len();
        let ok = l.hat.0.iter().zip(&r.hat.0).all(|(x, y)| self.bind(x, y))
            && self.normal(&l.body, &r.body);
        self.unbind(mark);
        ok
    }

    pub(crate) fn subst(&mut self, l: &Subst, r: &Subst) -> bool {
        l.len() == r.len() && l.0.iter().zip(&r.0).all(|(a, b)| self.entry(a, b))
    }

    fn entry(&mut self, l: &SubstEntry, r: &SubstEntry) -> bool {
        match (l, r) {
            (SubstEntry::Term(a), SubstEntry::Term(b)) => self.body(a, b),
            (SubstEntry::Rename(x), SubstEntry::Rename(y)) => self.var(x, y),
            (SubstEntry::Rename(x), SubstEntry::Term(b)) if self.eta => {
                eta_contract(b).is_some_and(|y| self.var(x, &y))
            }
            (SubstEntry::Term(a), SubstEntry::Rename(y)) if self.eta => {
                eta_contract(a).is_some_and(|x| self.var(&x, y))
            }
            _ => false,
        }
    }

    pub(crate) fn atomic_type(&mut self, l: &AtomicType, r: &AtomicType) -> bool {
        match (l, r) {
            (AtomicType::Sort(a), AtomicType::Sort(b)) => a == b,
            (AtomicType::Const(a), AtomicType::Const(b)) => a == b,
            (AtomicType::App(p, a), AtomicType::App(q, b)) => {
                self.atomic_type(p, q) && self.body(a, b)
            }
            _ => false,
        }
    }

    pub(crate) fn ty(&mut self, l: &Type, r: &Type) -> bool {
        match (l, r) {
            (Type::Atomic(p), Type::Atomic(q)) => self.atomic_type(p, q),
            (
                Type::Pi {
                    binder: x,
                    domain: a,
                    body: b,
                },
                Type::Pi {
                    binder: y,
                    domain: c,
                    body: d,
                },
            ) => {
                if !self.ctx_type(a, c) {
                    return false;
                }
                let mark = self.left.len();
                let ok = self.bind(x, y) && self.ty(b, d);
                self.unbind(mark);
                ok
            }
            _ => false,
        }
    }

    pub(crate) fn ctx_type(&mut self, l: &CtxType, r: &CtxType) -> bool {
        let mark = self.left.len();
        let ok = self.ctx_binding(&l.ctx, &r.ctx) && self.ty(&l.ty, &r.ty);
        self.unbind(mark);
        ok
    }

    /// Compares declarations pairwise, leaving them bound for the caller.
    fn ctx_binding(&mut self, l: &Context, r: &Context) -> bool {
        l.len() == r.len()
            && l.decls()
                .iter()
                .zip(r.decls())
                .all(|(a, b)| self.ctx_type(&a.ty, &b.ty) && self.bind(&a.var, &b.var))
    }

    pub(crate) fn context(&mut self, l: &Context, r: &Context) -> bool {
        let mark = self.left.len();
        let ok = self.ctx_binding(l, r);
        self.unbind(mark);
        ok
    }
}

/// If `Γ̂.M` is the η-expansion of a single variable `y` applied to the
/// identity on `Γ̂`, returns `y`.
pub fn eta_contract(b: &BoundBody) -> Option<Var> {
    let mut lams = Vec::new();
    let mut m = &*b.body;
    while let NormalTerm::Lam(z, body) = m {
        lams.push(z);
        m = body;
    }
    let NormalTerm::Atomic(r) = m else {
        return None;
    };
    let (head, args) = r.spine();
    let AtomicTerm::Var(y, tau) = head else {
        return None;
    };
    if args.len() != lams.len() || tau.len() != b.hat.len() {
        return None;
    }
    let binders: Vec<&Var> = b.hat.0.iter().chain(lams.iter().copied()).collect();
    let distinct: BTreeSet<&Var> = binders.iter().copied().collect();
    if distinct.len() != binders.len() || distinct.contains(y) {
        return None;
    }
    let entries_ok = tau.0.iter().zip(&b.hat.0).all(|(e, h)| match e {
        SubstEntry::Rename(v) => v == h,
        SubstEntry::Term(inner) => eta_contract(inner).as_ref() == Some(h),
    });
    let args_ok = args
        .iter()
        .zip(&lams)
        .all(|(a, z)| eta_contract(a).as_ref() == Some(*z));
    (entries_ok && args_ok).then(|| y.clone())
}

/// Syntactic categories compared by [`alpha_equal`].
pub trait AlphaEq {
    fn alpha_eq(&self, other: &Self) -> bool;
}

impl AlphaEq for NormalTerm {
    fn alpha_eq(&self, other: &Self) -> bool {
        Equiv::new(false).normal(self, other)
    }
}

impl AlphaEq for AtomicTerm {
    fn alpha_eq(&self, other: &Self) -> bool {
        Equiv::new(false).atomic_term(self, other)
    }
}

impl AlphaEq for BoundBody {
    fn alpha_eq(&self, other: &Self) -> bool {
        Equiv::new(false).body(self, other)
    }
}

impl AlphaEq for Subst {
    fn alpha_eq(&self, other: &Self) -> bool {
        Equiv::new(false).subst(self, other)
    }
}

impl AlphaEq for Type {
    fn alpha_eq(&self, other: &Self) -> bool {
        Equiv::new(false).ty(self, other)
    }
}

impl AlphaEq for AtomicType {
    fn alpha_eq(&self, other: &Self) -> bool {
        Equiv::new(false).atomic_type(self, other)
    }
}

impl AlphaEq for CtxType {
    fn alpha_eq(&self, other: &Self) -> bool {
        Equiv::new(false).ctx_type(self, other)
    }
}

impl AlphaEq for Context {
    fn alpha_eq(&self, other: &Self) -> bool {
        Equiv::new(false).context(self, other)
    }
}

pub fn alpha_equal<T: AlphaEq + ?Sized>(lhs: &T, rhs: &T) -> bool {
    lhs.alpha_eq(rhs)
}
