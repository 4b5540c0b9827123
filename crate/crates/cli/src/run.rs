//! Running the items of a source file and recording one diagnostic each.

use mlf_core::approx::{erase_ctx, erase_ctx_type, erase_type};
use mlf_core::budget::Budget;
use mlf_core::contexts::{chop_ctx, extend_ctx, level_of, merge_ctx};
use mlf_core::hsub::{Engine, SingleSubst};
use mlf_core::parse::{Item, ItemKind, SourceFile};
use mlf_core::typer::{check_signature, CheckedSignature, Checker, ErrorKind, TypeError};
use mlf_core::{ConstClass, Context, NormalTerm, Signature};
use serde::Serialize;

/// Exit status, ordered by precedence: a budget failure outranks a type error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    TypeError = 1,
    ParseError = 2,
    Budget = 3,
}

#[derive(Debug, Serialize)]
pub struct Record {
    pub index: usize,
    pub line: usize,
    pub directive: &'static str,
    pub subject: String,
    pub status: &'static str,
    pub error_kind: Option<String>,
    pub path: Vec<String>,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<String>>,
}

impl Record {
    fn new(index: usize, line: usize, directive: &'static str, subject: String) -> Record {
        Record {
            index,
            line,
            directive,
            subject,
            status: "ok",
            error_kind: None,
            path: Vec::new(),
            message: String::new(),
            result: None,
            trace: None,
        }
    }

    fn fail(&mut self, e: &TypeError) {
        self.status = "error";
        self.error_kind = Some(e.kind.to_string());
        self.path = e.path.clone();
        self.message = e.message.clone();
    }

    pub fn exit(&self) -> Status {
        match self.error_kind.as_deref() {
            None => Status::Ok,
            Some("DepthExceeded") => Status::Budget,
            Some("ParseError") => Status::ParseError,
            Some(_) => Status::TypeError,
        }
    }

    /// One line for terminal output.
    pub fn human(&self) -> String {
        let mut s = format!("{}: {} {}", self.line, self.directive, self.subject);
        match &self.error_kind {
            None => s.push_str(": ok"),
            Some(k) => {
                s.push_str(&format!(": {k}: {}", self.message));
                if !self.path.is_empty() {
                    s.push_str(&format!(" (at {})", self.path.join(" / ")));
                }
            }
        }
        if let Some(r) = &self.result {
            s.push_str(&format!("\n  = {r}"));
        }
        for t in self.trace.iter().flatten() {
            s.push_str(&format!("\n  {t}"));
        }
        s
    }
}

pub fn parse_failure(e: &mlf_core::parse::ParseError) -> Record {
    let mut r = Record::new(0, e.line, "parse", String::new());
    r.status = "error";
    r.error_kind = Some("ParseError".into());
    r.message = format!("{}:{}: {}", e.line, e.col, e.message);
    r
}

pub struct Options {
    pub trace: bool,
    pub max_depth: usize,
}

/// Which directives to run, and whether to keep substitution results.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Check,
    Hsub,
}

/// Checks the signature, then runs the directives in order. A signature
/// error stops the run, since every directive depends on it.
pub fn run_file(file: &SourceFile, opts: &Options, mode: Mode) -> Vec<Record> {
    let sig = match file.signature() {
        Ok(sig) => sig,
        Err(e) => return vec![parse_failure(&e)],
    };
    let checked = match check_signature(&sig) {
        Ok(c) => c,
        Err(e) => {
            let name = e.path.first().cloned().unwrap_or_default();
            let line = decl_line(file, &name);
            let mut r = Record::new(0, line, "signature", name);
            r.fail(&e);
            return vec![r];
        }
    };
    let mut out = Vec::new();
    for item in &file.items {
        let wanted = match (&item.kind, mode) {
            (ItemKind::Decl { .. }, _) => false,
            (ItemKind::Hsub { .. }, _) => true,
            (_, m) => m == Mode::Check,
        };
        if wanted {
            out.push(run_item(&checked, item, out.len(), opts));
        }
    }
    out
}

fn decl_line(file: &SourceFile, name: &str) -> usize {
    file.items
        .iter()
        .find(|it| matches!(&it.kind, ItemKind::Decl { name: n, .. } if n == name))
        .map_or(0, |it| it.line)
}

fn run_item(sig: &CheckedSignature, item: &Item, index: usize, opts: &Options) -> Record {
    let checker = Checker::with_budget(sig, Budget::new(opts.max_depth));
    let checker = if opts.trace {
        checker.traced()
    } else {
        checker
    };
    let (directive, subject) = describe(&item.kind);
    let mut rec = Record::new(index, item.line, directive, subject);
    let outcome = match &item.kind {
        ItemKind::Check { ctx, term, ty } => checker.check_judgement(ctx, term, ty).map(|()| None),
        ItemKind::Ctx { ctx } => checker
            .check_ctx(&Context::empty(), ctx, level_of(ctx))
            .map(|()| None),
        ItemKind::Hsub {
            ctx,
            replacement,
            target,
            bound,
            subject,
        } => hsub_item(&checker, ctx, replacement, target, bound, subject).map(Some),
        ItemKind::Decl { .. } => Ok(None),
    };
    match outcome {
        Ok(result) => rec.result = result.map(|m| m.to_string()),
        Err(e) => rec.fail(&e),
    }
    if opts.trace {
        rec.trace = Some(checker.take_trace());
    }
    rec
}

/// Checks that the context and replacement are well-formed, then substitutes.
fn hsub_item(
    checker: &Checker<'_>,
    ctx: &Context,
    replacement: &mlf_core::BoundBody,
    target: &mlf_core::Var,
    bound: &mlf_core::CtxType,
    subject: &NormalTerm,
) -> Result<NormalTerm, TypeError> {
    let outer = extend_ctx(ctx, target.clone(), bound.clone())?;
    let empty = Context::empty();
    checker.check_ctx(&empty, &outer, level_of(&outer))?;
    if replacement.hat != bound.ctx.hat() {
        return Err(TypeError::new(
            ErrorKind::ArityMismatch,
            format!(
                "replacement binds ({}) but the local context is ({})",
                replacement.hat,
                bound.ctx.hat()
            ),
        ));
    }
    let inner = merge_ctx(&chop_ctx(ctx, target.level), &bound.ctx)?;
    checker.check_normal(&inner, &replacement.body, &bound.ty)?;
    let approx = erase_ctx_type(bound)
        .map_err(|e| TypeError::new(ErrorKind::IllFormedContext, e.to_string()))?;
    let s = SingleSubst::new(replacement.clone(), target.clone(), approx)?;
    checker.budget().reset_steps();
    Ok(Engine::new(checker.budget()).normal(&s, subject)?)
}

fn describe(kind: &ItemKind) -> (&'static str, String) {
    match kind {
        ItemKind::Decl { name, ty } => ("decl", format!("{name} : {ty}")),
        ItemKind::Check { ctx, term, ty } => ("check", format!("{term} : {ty}{}", within(ctx))),
        ItemKind::Ctx { ctx } => ("ctx", ctx.to_string()),
        ItemKind::Hsub {
            ctx,
            replacement,
            target,
            bound,
            subject,
        } => (
            "hsub",
            format!(
                "({replacement}) / {target} : {bound} into {subject}{}",
                within(ctx)
            ),
        ),
    }
}

fn within(ctx: &Context) -> String {
    if ctx.is_empty() {
        String::new()
    } else {
        format!(" in {ctx}")
    }
}

/// `name : approximation` for every declaration, then every directive's
/// context.
pub fn erase_lines(sig: &Signature, file: &SourceFile) -> Vec<String> {
    let mut out = Vec::new();
    for e in sig.entries() {
        // families classify terms and have no approximation of their own
        if e.class == ConstClass::Family {
            out.push(format!("{} : kind", e.name));
            continue;
        }
        match erase_type(&e.ty) {
            Ok(a) => out.push(format!("{} : {a}", e.name)),
            Err(err) => out.push(format!("{} : <{err}>", e.name)),
        }
    }
    for item in &file.items {
        let ctx = match &item.kind {
            ItemKind::Check { ctx, .. } | ItemKind::Ctx { ctx } | ItemKind::Hsub { ctx, .. } => ctx,
            ItemKind::Decl { .. } => continue,
        };
        match erase_ctx(ctx) {
            Ok(a) => out.push(format!("{}: [{a}]", item.line)),
            Err(err) => out.push(format!("{}: <{err}>", item.line)),
        }
    }
    out
}
