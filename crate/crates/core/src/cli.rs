//! The `refinery` command line: parses flags and object literals, runs one
//! library operation and renders the result as plain text.
//!
//! Object literals: points `3`, sets `{1,2}`, lists `[1,2]`, families
//! `{{1},{2,3}}`, ordered partitions `[{1,2}|{3}]`, sets of lists
//! `{[1,2],[3]}` and permutations in cycle notation `(1 2)(3 4)`. Digraphs
//! and extended graphs are read from files in the stack text format.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::encode::{encode_object, refiner_for, Query, SourceObject};
use crate::error::{Error, Result};
use crate::objects::text::{format_stack, parse_entries, parse_stack};
use crate::objects::{Digraph, Graph, LabelledDigraph, OrderedPartition, Stack, StackEntry, StackKind};
use crate::oracle::{brute_filter, coset_from_elements, OracleConfig};
use crate::perm::{GroupCoset, PermGroup, Permutation};
use crate::refiner::{check_perfect, check_sound};
use crate::search::{
    conjugacy_transporter, is_two_closed, normaliser, solve, solve_extended, solve_intersection, two_closure,
    SolveResult,
};

/// Default bound on the number of group elements enumerated.
pub const DEFAULT_CAP: usize = 362_880;

#[derive(Debug, Parser)]
#[command(name = "refinery", about = "Backtrack search for permutation group stabilisers and transporters")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Stabiliser of an object.
    Stab(Opts),
    /// Transporter set from one object to another.
    Transport(Opts),
    /// 2-closure of a group.
    TwoClosure(Opts),
    /// Whether a group equals its 2-closure.
    IsTwoClosed(Opts),
    /// Normaliser of a group in the symmetric group.
    Normaliser(Opts),
    /// Elements conjugating one group onto another.
    Conjugate(Opts),
    /// The stack encoding an object.
    Encode(Opts),
    /// Sampled soundness and perfectness of the refiner for a query.
    CheckRefiner(Opts),
    /// Stabiliser or transporter by exhaustive enumeration.
    Oracle(Opts),
}

#[derive(Debug, Args)]
struct Opts {
    /// Size of the domain {1, ..., n}.
    #[arg(long)]
    degree: usize,
    /// Object kind, e.g. set, partition, perm-conj, set-of-sets, stack.
    #[arg(long)]
    kind: Option<String>,
    /// Object literal for stabiliser and encoding queries.
    #[arg(long)]
    object: Option<String>,
    #[arg(long)]
    from: Option<String>,
    #[arg(long)]
    to: Option<String>,
    /// Group generators in cycle notation.
    #[arg(long, num_args = 1..)]
    gens: Vec<String>,
    #[arg(long = "to-gens", num_args = 1..)]
    to_gens: Vec<String>,
    /// Input files in the stack text format; a transporter takes two.
    #[arg(long, num_args = 1..)]
    file: Vec<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    samples: usize,
    /// Most group elements to enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Write the output here instead of returning it.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Runs one invocation. `argv[0]` is the program name. Returns the exit
/// status (0 success, 1 empty transporter, 2 usage error) and the text to print.
pub fn run(argv: &[String]) -> (i32, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let (verb, opts) = cli.verb.split();
    match execute(verb, opts) {
        Ok((code, text)) => match &opts.output {
            Some(path) => match std::fs::write(path, &text) {
                Ok(()) => (code, String::new()),
                Err(e) => (2, format!("error: cannot write {}: {e}\n", path.display())),
            },
            None => (code, text),
        },
        Err(e) => (2, format!("error: {e}\n")),
    }
}

impl Verb {
    fn split(&self) -> (&'static str, &Opts) {
        match self {
            Verb::Stab(o) => ("stab", o),
            Verb::Transport(o) => ("transport", o),
            Verb::TwoClosure(o) => ("two-closure", o),
            Verb::IsTwoClosed(o) => ("is-two-closed", o),
            Verb::Normaliser(o) => ("normaliser", o),
            Verb::Conjugate(o) => ("conjugate", o),
            Verb::Encode(o) => ("encode", o),
            Verb::CheckRefiner(o) => ("check-refiner", o),
            Verb::Oracle(o) => ("oracle", o),
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Unsupported(msg.into())
}

fn execute(verb: &str, o: &Opts) -> Result<(i32, String)> {
    let n = o.degree;
    if n == 0 {
        return Err(usage("--degree must be positive"));
    }
    let mut out = String::new();
    match verb {
        "stab" | "transport" => {
            let transport = verb == "transport";
            if o.kind.as_deref() == Some("stack") {
                let (s, t) = stack_inputs(o, transport)?;
                let result = if s.kind() == StackKind::Extended || t.kind() == StackKind::Extended {
                    solve_extended(&s, &t)?
                } else {
                    solve(&s, &t)?
                };
                write_result(&mut out, &result, None, o.cap)?;
                return Ok((exit_for(transport, &result.coset), out));
            }
            let q = query(o, transport)?;
            let r = refiner_for(&q)?;
            let result = solve_intersection(n, std::slice::from_ref(&r), true)?;
            write_result(&mut out, &result, Some(r.claims_perfect()), o.cap)?;
            Ok((exit_for(transport, &result.coset), out))
        }
        "two-closure" => {
            let closure = two_closure(&gens(n, &o.gens, "--gens")?)?;
            write_coset(&mut out, &closure, o.cap)?;
            Ok((0, out))
        }
        "is-two-closed" => {
            let g = gens(n, &o.gens, "--gens")?;
            let closed = is_two_closed(&g, o.cap)?;
            let _ = writeln!(out, "two-closed={closed}");
            let _ = writeln!(out, "order={}", g.order(o.cap)?);
            let _ = writeln!(out, "closure-order={}", two_closure(&g)?.order(o.cap)?);
            Ok((0, out))
        }
        "normaliser" => {
            let found = normaliser(&gens(n, &o.gens, "--gens")?, o.cap)?;
            write_coset(&mut out, &found.coset, o.cap)?;
            let _ = writeln!(out, "exact={}", found.exact);
            Ok((0, out))
        }
        "conjugate" => {
            let g = gens(n, &o.gens, "--gens")?;
            let h = gens(n, &o.to_gens, "--to-gens")?;
            let found = conjugacy_transporter(&g, &h, o.cap)?;
            write_coset(&mut out, &found.coset, o.cap)?;
            let _ = writeln!(out, "exact={}", found.exact);
            Ok((exit_for(true, &found.coset), out))
        }
        "encode" => {
            let x = object(o, o.object.as_deref().or(o.from.as_deref()), 0, "--object")?;
            x.validate(n)?;
            out.push_str(&format_stack(&encode_object(n, &x)?));
            Ok((0, out))
        }
        "check-refiner" => {
            let q = query(o, o.to.is_some() || o.file.len() > 1 || !o.to_gens.is_empty())?;
            OracleConfig::from_env().check_degree(n)?;
            let r = refiner_for(&q)?;
            let sound = check_sound(&r, o.samples, o.seed)?;
            let perfect = check_perfect(&r, o.samples, o.seed)?;
            let _ = writeln!(out, "refiner {}", r.name());
            let _ = writeln!(out, "claimed-perfect={}", r.claims_perfect());
            let _ = writeln!(out, "sound {sound}");
            let _ = writeln!(out, "perfect {perfect}");
            let _ = writeln!(out, "perfect={}", perfect.passed());
            Ok((if sound.passed() && perfect.passed() { 0 } else { 1 }, out))
        }
        "oracle" => {
            let transport = o.to.is_some() || o.file.len() > 1 || !o.to_gens.is_empty();
            let q = query(o, transport)?;
            let (x, y) = (q.x.clone(), q.target().clone());
            let elements = brute_filter(|g| x.maps_to(g, &y), n, &OracleConfig::from_env())?;
            let coset = coset_from_elements(n, &elements)?;
            write_coset(&mut out, &coset, o.cap)?;
            Ok((exit_for(transport, &coset), out))
        }
        other => Err(usage(format!("unknown verb {other}"))),
    }
}

fn exit_for(transport: bool, coset: &GroupCoset) -> i32 {
    if transport && coset.is_empty() {
        1
    } else {
        0
    }
}

fn write_coset(out: &mut String, coset: &GroupCoset, cap: usize) -> Result<()> {
    let _ = write!(out, "{coset}");
    let _ = writeln!(out, "order={}", coset.order(cap)?);
    Ok(())
}

fn write_result(out: &mut String, result: &SolveResult, perfect: Option<bool>, cap: usize) -> Result<()> {
    write_coset(out, &result.coset, cap)?;
    let _ = writeln!(out, "nodes={}", result.tree_nodes);
    if let Some(p) = perfect {
        let _ = writeln!(out, "perfect={p}");
    }
    Ok(())
}

fn gens(n: usize, text: &[String], flag: &str) -> Result<PermGroup> {
    if text.is_empty() {
        return Err(usage(format!("{flag} is required")));
    }
    PermGroup::parse(n, text)
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn stack_inputs(o: &Opts, transport: bool) -> Result<(Stack, Stack)> {
    let want = if transport { 2 } else { 1 };
    if o.file.len() != want {
        return Err(usage(format!("kind stack needs {want} --file argument(s)")));
    }
    let stacks = o
        .file
        .iter()
        .map(|p| {
            let s = parse_stack(&read_file(p)?)?;
            if s.degree() != o.degree && !s.is_empty() {
                return Err(Error::DegreeMismatch(s.degree(), o.degree));
            }
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    let t = stacks.last().cloned().expect("at least one file");
    Ok((stacks[0].clone(), t))
}

fn query(o: &Opts, transport: bool) -> Result<Query> {
    let n = o.degree;
    if o.kind.as_deref() == Some("group") {
        let g = SourceObject::Group(gens(n, &o.gens, "--gens")?);
        return if transport {
            Query::transporter(n, g, SourceObject::Group(gens(n, &o.to_gens, "--to-gens")?))
        } else {
            Query::stabiliser(n, g)
        };
    }
    if transport {
        let x = object(o, o.from.as_deref(), 0, "--from")?;
        let y = object(o, o.to.as_deref(), 1, "--to")?;
        Query::transporter(n, x, y)
    } else {
        let x = object(o, o.object.as_deref().or(o.from.as_deref()), 0, "--object")?;
        Query::stabiliser(n, x)
    }
}

/// The object given by `literal`, or else by the `index`-th `--file`.
fn object(o: &Opts, literal: Option<&str>, index: usize, flag: &str) -> Result<SourceObject> {
    let kind = o.kind.as_deref().ok_or_else(|| usage("--kind is required"))?;
    match (literal, o.file.get(index)) {
        (Some(text), _) => parse_object(o.degree, kind, text),
        (None, Some(path)) => object_from_file(o.degree, kind, &read_file(path)?),
        (None, None) => Err(usage(format!("{flag} or --file is required"))),
    }
}

fn object_from_file(n: usize, kind: &str, text: &str) -> Result<SourceObject> {
    let (degree, entries) = parse_entries(text)?;
    if degree != n {
        return Err(Error::DegreeMismatch(degree, n));
    }
    let digraphs = entries
        .into_iter()
        .map(|e| match e {
            StackEntry::Digraph(d) => Ok(d),
            other => Err(usage(format!("expected digraph entries, found {:?}", other.kind()))),
        })
        .collect::<Result<Vec<LabelledDigraph>>>()?;
    match kind {
        "labelled-digraph" => match <[LabelledDigraph; 1]>::try_from(digraphs) {
            Ok([d]) => Ok(SourceObject::LabelledDigraph(d)),
            Err(v) => Err(usage(format!("expected one digraph, found {}", v.len()))),
        },
        "set-of-digraphs" => Ok(SourceObject::SetOfDigraphs(digraphs.into_iter().collect())),
        "set-of-stacks" => digraphs
            .into_iter()
            .map(|d| Stack::digraphs(n, vec![d]))
            .collect::<Result<Vec<_>>>()
            .map(SourceObject::SetOfStacks),
        other => Err(usage(format!("kind {other} is not read from files"))),
    }
}

/// A parsed object literal before it is interpreted as a particular kind.
#[derive(Debug, Clone, PartialEq)]
enum Literal {
    Int(usize),
    Set(Vec<Literal>),
    List(Vec<Literal>),
    /// `[A|B|...]`.
    Cells(Vec<Literal>),
    Perm(String),
}

fn parse_error(msg: impl Into<String>) -> Error {
    Error::Parse { line: 1, msg: msg.into() }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
}

impl<'a> Reader<'a> {
    fn skip_space(&mut self) {
        while self.chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_space();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn value(&mut self) -> Result<Literal> {
        match self.peek() {
            Some('{') => self.items('}').map(|(items, _)| Literal::Set(items)),
            Some('[') => self.items(']').map(|(items, cells)| if cells { Literal::Cells(items) } else { Literal::List(items) }),
            Some('(') => self.perm(),
            Some(c) if c.is_ascii_digit() => {
                let start = self.chars.peek().expect("peeked").0;
                let mut end = start;
                while let Some(&(i, c)) = self.chars.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    end = i + 1;
                    self.chars.next();
                }
                self.text[start..end]
                    .parse()
                    .map(Literal::Int)
                    .map_err(|_| parse_error(format!("bad number {}", &self.text[start..end])))
            }
            Some(c) => Err(parse_error(format!("unexpected {c:?}"))),
            None => Err(parse_error("unexpected end of literal")),
        }
    }

    /// Items up to `close`; also reports whether `|` separated them.
    fn items(&mut self, close: char) -> Result<(Vec<Literal>, bool)> {
        self.chars.next();
        let mut items = Vec::new();
        let mut bars = false;
        if self.peek() == Some(close) {
            self.chars.next();
            return Ok((items, false));
        }
        loop {
            items.push(self.value()?);
            match self.peek() {
                Some(c) if c == close => {
                    self.chars.next();
                    return Ok((items, bars));
                }
                Some(',') => {}
                Some('|') if close == ']' => bars = true,
                Some(c) => return Err(parse_error(format!("unexpected {c:?}"))),
                None => return Err(parse_error(format!("missing {close:?}"))),
            }
            self.chars.next();
        }
    }

    /// A run of parenthesised cycles; commas inside cycles are allowed.
    fn perm(&mut self) -> Result<Literal> {
        let mut text = String::new();
        while self.peek() == Some('(') {
            for (_, c) in self.chars.by_ref() {
                text.push(c);
                if c == ')' {
                    break;
                }
            }
        }
        Ok(Literal::Perm(text))
    }
}

fn parse_literal(text: &str) -> Result<Literal> {
    let mut reader = Reader {
        chars: text.char_indices().peekable(),
        text,
    };
    let value = reader.value()?;
    match reader.peek() {
        None => Ok(value),
        Some(c) => Err(parse_error(format!("trailing {c:?}"))),
    }
}

fn as_int(l: &Literal) -> Result<usize> {
    match l {
        Literal::Int(p) => Ok(*p),
        other => Err(parse_error(format!("expected a point, found {other:?}"))),
    }
}

fn as_set(l: &Literal) -> Result<BTreeSet<usize>> {
    match l {
        Literal::Set(items) => items.iter().map(as_int).collect(),
        other => Err(parse_error(format!("expected a set, found {other:?}"))),
    }
}

fn as_points(l: &Literal) -> Result<Vec<usize>> {
    match l {
        Literal::List(items) => items.iter().map(as_int).collect(),
        other => Err(parse_error(format!("expected a list, found {other:?}"))),
    }
}

fn as_family(l: &Literal) -> Result<BTreeSet<BTreeSet<usize>>> {
    match l {
        Literal::Set(items) => items.iter().map(as_set).collect(),
        other => Err(parse_error(format!("expected a set of sets, found {other:?}"))),
    }
}

fn as_list(l: &Literal) -> Result<&[Literal]> {
    match l {
        Literal::List(items) => Ok(items),
        other => Err(parse_error(format!("expected a list, found {other:?}"))),
    }
}

fn as_partition(n: usize, l: &Literal) -> Result<OrderedPartition> {
    match l {
        Literal::Cells(items) => OrderedPartition::new(n, items.iter().map(as_set).collect::<Result<_>>()?),
        // A one-cell partition has no bar.
        Literal::List(items) if items.len() == 1 => as_partition(n, &Literal::Cells(items.clone())),
        other => Err(parse_error(format!("expected a partition, found {other:?}"))),
    }
}

fn as_perm(n: usize, l: &Literal) -> Result<Permutation> {
    match l {
        Literal::Perm(text) => Permutation::parse(text, n),
        other => Err(parse_error(format!("expected a permutation, found {other:?}"))),
    }
}

fn pairs(l: &Literal) -> Result<Vec<(usize, usize)>> {
    let Literal::Set(items) = l else {
        return Err(parse_error("expected a set of pairs"));
    };
    items
        .iter()
        .map(|item| {
            let points: Vec<usize> = match item {
                Literal::Set(_) => as_set(item)?.into_iter().collect(),
                _ => as_points(item)?,
            };
            match points[..] {
                [a, b] => Ok((a, b)),
                _ => Err(parse_error("expected a pair")),
            }
        })
        .collect()
}

/// Interprets an object literal as a source object of the named kind.
pub fn parse_object(n: usize, kind: &str, text: &str) -> Result<SourceObject> {
    use SourceObject as S;
    let l = parse_literal(text)?;
    Ok(match kind {
        "point" => S::Point(as_int(&l)?),
        "point-list" => S::PointList(as_points(&l)?),
        "partition" => S::Partition(as_partition(n, &l)?),
        "partition-list" => S::PartitionList(as_list(&l)?.iter().map(|p| as_partition(n, p)).collect::<Result<_>>()?),
        "set" => S::Subset(as_set(&l)?),
        "set-list" => S::SubsetList(as_list(&l)?.iter().map(as_set).collect::<Result<_>>()?),
        "distinct-sizes" => S::DistinctSizes(as_family(&l)?),
        "disjoint-sets" => S::DisjointSets(as_family(&l)?),
        "unordered-partition" => S::UnorderedPartition(as_family(&l)?),
        "set-of-sets" => S::SetOfSets(as_family(&l)?),
        "set-of-lists" => match &l {
            Literal::Set(items) => S::SetOfLists(items.iter().map(as_points).collect::<Result<_>>()?),
            other => return Err(parse_error(format!("expected a set of lists, found {other:?}"))),
        },
        "graph" => S::Graph(Graph::new(n, pairs(&l)?)?),
        "digraph" => S::Digraph(Digraph::new(n, pairs(&l)?)?),
        "perm-conj" => S::PermConj(as_perm(n, &l)?),
        "perm-list" => S::PermList(as_list(&l)?.iter().map(|p| as_perm(n, p)).collect::<Result<_>>()?),
        other => return Err(usage(format!("kind {other} has no literal syntax; use --file or --gens"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_literal("{1, 2}").unwrap(), Literal::Set(vec![Literal::Int(1), Literal::Int(2)]));
        assert!(matches!(parse_literal("[{1,2}|{3}]").unwrap(), Literal::Cells(c) if c.len() == 2));
        assert_eq!(parse_literal("(1 2)(3,4)").unwrap(), Literal::Perm("(1 2)(3,4)".into()));
        assert!(parse_literal("{1,2").is_err());
        assert!(parse_literal("{1}}").is_err());
        assert!(parse_literal("{1|2}").is_err());
    }

    #[test]
    fn objects_by_kind() {
        let x = parse_object(4, "set-of-lists", "{[1,2],[3]}").unwrap();
        assert_eq!(x, SourceObject::SetOfLists([vec![1, 2], vec![3]].into()));
        let p = parse_object(3, "partition", "[{1,2}|{3}]").unwrap();
        assert_eq!(p, SourceObject::Partition(OrderedPartition::new(3, vec![[1, 2].into(), [3].into()]).unwrap()));
        let l = parse_object(4, "perm-list", "[(1 2)(3 4), ()]").unwrap();
        assert!(matches!(l, SourceObject::PermList(v) if v.len() == 2 && v[1].is_identity()));
        assert!(parse_object(4, "set", "[1,2]").is_err());
        assert!(parse_object(4, "group", "{1}").is_err());
    }
}
