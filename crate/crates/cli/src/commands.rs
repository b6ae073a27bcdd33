use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hnrank::harness::verify_random;
use hnrank::magnus::compare;
use hnrank::stallings::Index;
use hnrank::voltage::{extremal_family, verify_bound};
use hnrank::{BoundReport, FiniteGraph, ForestBall, GroupElement, VoltageGraph, Word};
use serde_json::{json, Value};

use crate::dot;
use crate::error::CliError;
use crate::subgroup::{Subgroup, SubgroupSpec};
use crate::syntax::{parse_generators, parse_word, print_generators, print_word, Syntax};

pub const SCHEMA_VERSION: u64 = 1;

/// Subgroup intersections in free groups and in F_k × Z/n.
#[derive(Debug, Parser)]
#[command(name = "hnrank", version)]
pub struct Cli {
    /// Word syntax for input and output.
    #[arg(long, global = true, value_enum, default_value_t = Syntax::Compact)]
    pub syntax: Syntax,
    /// Rank of the ambient free group for inline generators.
    #[arg(long, global = true, default_value_t = 2)]
    pub ambient_rank: usize,
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Emit a Graphviz drawing instead of text.
    #[arg(long, global = true)]
    pub dot: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    pub count: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SubgroupArgs {
    /// Generators, comma separated, each `word` or `word:residue`.
    #[arg(short = 'g', long = "generators", conflicts_with = "file")]
    pub generators: Option<String>,
    /// JSON subgroup file.
    #[arg(short = 'f', long)]
    pub file: Option<PathBuf>,
    /// n in F_k × Z/n; 0 or 1 for the free group.
    #[arg(short = 'n', long, default_value_t = 1)]
    pub modulus: u64,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(short = 'a', conflicts_with = "file_a")]
    pub a: Option<String>,
    #[arg(short = 'b', conflicts_with = "file_b")]
    pub b: Option<String>,
    #[arg(long)]
    pub file_a: Option<PathBuf>,
    #[arg(long)]
    pub file_b: Option<PathBuf>,
    #[arg(short = 'n', long, default_value_t = 1)]
    pub modulus: u64,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[arg(long)]
    pub vertices: usize,
    /// Edges as `s-t`, comma separated.
    #[arg(long, default_value = "")]
    pub edges: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank of a subgroup.
    Rank(SubgroupArgs),
    /// Index of a subgroup, or "infinite".
    Index(SubgroupArgs),
    /// Whether a word (with residue) lies in a subgroup.
    Member {
        #[command(flatten)]
        subgroup: SubgroupArgs,
        #[arg(short = 'w', long)]
        word: String,
        #[arg(short = 'r', long, default_value_t = 0)]
        residue: u64,
    },
    /// Basis of A ∩ B.
    Intersect(PairArgs),
    /// Compare rank(A ∩ B) − 1 with n·(rank A − 1)(rank B − 1).
    Verify {
        #[command(flatten)]
        pair: PairArgs,
        /// Draw --count random pairs instead.
        #[arg(long)]
        random: bool,
    },
    /// The sharp family for given k, l, n.
    Extremal {
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'l')]
        l: usize,
        #[arg(short = 'n', default_value_t = 1)]
        n: u64,
        #[arg(long)]
        verify: bool,
    },
    /// Reduced rank of a finite multigraph.
    ReducedRank(GraphArgs),
    /// A maximal essential edge set of a finite multigraph.
    EssentialSet(GraphArgs),
    /// Magnus order of two words.
    Order {
        #[arg(short = 'u')]
        u: String,
        #[arg(short = 'v')]
        v: String,
    },
    /// Ball in the Cayley tree, optionally with several copies.
    Ball {
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, default_value_t = 1)]
        copies: usize,
    },
    /// Certified order-essential edge orbits of a subgroup acting on a ball.
    Certify {
        #[command(flatten)]
        subgroup: SubgroupArgs,
        #[arg(long, default_value_t = 5)]
        radius: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Rank(_) => "rank",
            Command::Index(_) => "index",
            Command::Member { .. } => "member",
            Command::Intersect(_) => "intersect",
            Command::Verify { .. } => "verify",
            Command::Extremal { .. } => "extremal",
            Command::ReducedRank(_) => "reduced-rank",
            Command::EssentialSet(_) => "essential-set",
            Command::Order { .. } => "order",
            Command::Ball { .. } => "ball",
            Command::Certify { .. } => "certify",
        }
    }
}

/// What a command produced; `exit` is 0, or 3 for a bound violation.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub dot: Option<String>,
    pub exit: u8,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            dot: None,
            exit: 0,
        }
    }

    fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    /// The text that goes to standard output under the given flags.
    pub fn render(&self, cli: &Cli) -> String {
        if cli.dot {
            if let Some(d) = &self.dot {
                return d.clone();
            }
        }
        if cli.json {
            let mut doc = json!({ "schemaVersion": SCHEMA_VERSION, "command": cli.command.name() });
            if let (Value::Object(doc), Value::Object(fields)) = (&mut doc, &self.json) {
                doc.extend(fields.clone());
            }
            return serde_json::to_string_pretty(&doc).expect("plain data") + "\n";
        }
        self.text.clone()
    }
}

struct Ctx {
    syntax: Syntax,
    rank: usize,
}

impl Ctx {
    fn subgroup(&self, inline: Option<&str>, file: Option<&PathBuf>, modulus: u64) -> Result<Subgroup, CliError> {
        match (inline, file) {
            (_, Some(path)) => SubgroupSpec::load(path)?.resolve(self.syntax),
            (Some(text), None) => {
                let modulus = modulus.max(1);
                let gens = parse_generators(text, self.syntax, self.rank)?;
                if let Some((w, c)) = gens.iter().find(|(_, c)| modulus > 1 && *c >= modulus) {
                    return Err(CliError::Parse(format!(
                        "residue {c} of {} not reduced mod {modulus}",
                        print_word(w, self.syntax)
                    )));
                }
                Subgroup::new(self.rank, modulus, gens)
            }
            (None, None) => Err(CliError::Parse("no subgroup given (use -g or a file)".into())),
        }
    }

    fn pair(&self, p: &PairArgs) -> Result<(Subgroup, Subgroup), CliError> {
        let a = self.subgroup(p.a.as_deref(), p.file_a.as_ref(), p.modulus)?;
        let b = self.subgroup(p.b.as_deref(), p.file_b.as_ref(), p.modulus)?;
        if a.rank != b.rank {
            return Err(hnrank::Error::RankMismatch {
                left: a.rank,
                right: b.rank,
            }
            .into());
        }
        if a.modulus != b.modulus {
            return Err(hnrank::Error::ModulusMismatch {
                left: a.modulus,
                right: b.modulus,
            }
            .into());
        }
        Ok((a, b))
    }

    fn word(&self, text: &str) -> Result<Word, CliError> {
        parse_word(text, self.syntax, self.rank)
    }

    fn generators_json(&self, gens: &[(Word, u64)]) -> Value {
        gens.iter()
            .map(|(w, c)| json!({ "word": print_word(w, self.syntax), "residue": c }))
            .collect()
    }
}

fn index_value(i: Index) -> (String, Value) {
    match i {
        Index::Finite(m) => (m.to_string(), json!(m)),
        Index::Infinite => ("infinite".into(), json!("infinite")),
    }
}

fn parse_graph(args: &GraphArgs) -> Result<FiniteGraph, CliError> {
    let edges = args
        .edges
        .split(',')
        .map(str::trim)
        .filter(|e| !e.is_empty())
        .map(|e| {
            let (s, t) = e
                .split_once('-')
                .ok_or_else(|| CliError::Parse(format!("edge {e:?} is not of the form s-t")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Parse(format!("bad vertex in edge {e:?}")))
            };
            Ok((num(s)?, num(t)?))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    FiniteGraph::new(args.vertices, edges).map_err(|e| CliError::Parse(e.to_string()))
}

fn report_text(r: &BoundReport) -> String {
    let verdict = if !r.holds {
        "VIOLATED"
    } else if r.equality {
        "EQUALITY"
    } else {
        "HOLDS"
    };
    format!(
        "n = {}\nrank(A) = {}\nrank(B) = {}\nrank(A ∩ B) = {}\nlhs = {}\nrhs = {}\nrhs [6n] = {}\nrhs [n²] = {}\n{verdict}\n",
        r.modulus, r.rank_a, r.rank_b, r.rank_intersection, r.lhs, r.rhs_theorem1, r.rhs_za14, r.rhs_ass15
    )
}

pub fn report_json(r: &BoundReport) -> Value {
    json!({
        "modulus": r.modulus,
        "rankA": r.rank_a,
        "rankB": r.rank_b,
        "rankIntersection": r.rank_intersection,
        "lhs": r.lhs,
        "rhsTheorem1": r.rhs_theorem1,
        "rhsZa14": r.rhs_za14,
        "rhsASS15": r.rhs_ass15,
        "equality": r.equality,
        "holds": r.holds,
    })
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let ctx = Ctx {
        syntax: cli.syntax,
        rank: cli.ambient_rank,
    };
    if ctx.rank == 0 {
        return Err(CliError::Parse("--ambient-rank must be ≥ 1".into()));
    }
    match &cli.command {
        Command::Rank(s) => {
            let h = ctx.subgroup(s.generators.as_deref(), s.file.as_ref(), s.modulus)?;
            let v = h.voltage_graph()?;
            let rank = v.rank()?;
            Ok(Output::new(format!("{rank}\n"), json!({ "rank": rank }))
                .with_dot(dot::core_graph(v.underlying(), Some(v.voltages()), ctx.syntax)))
        }
        Command::Index(s) => {
            let h = ctx.subgroup(s.generators.as_deref(), s.file.as_ref(), s.modulus)?;
            let v = h.voltage_graph()?;
            let (text, value) = index_value(v.index());
            Ok(Output::new(format!("{text}\n"), json!({ "index": value }))
                .with_dot(dot::core_graph(v.underlying(), Some(v.voltages()), ctx.syntax)))
        }
        Command::Member {
            subgroup: s,
            word,
            residue,
        } => {
            let h = ctx.subgroup(s.generators.as_deref(), s.file.as_ref(), s.modulus)?;
            let w = parse_word(word, ctx.syntax, h.rank)?;
            let member = h.voltage_graph()?.contains(&w, residue % h.modulus)?;
            Ok(Output::new(
                format!("{member}\n"),
                json!({ "word": print_word(&w, ctx.syntax), "residue": residue % h.modulus, "member": member }),
            ))
        }
        Command::Intersect(p) => {
            let (a, b) = ctx.pair(p)?;
            let ab = a.voltage_graph()?.fiber_product(&b.voltage_graph()?)?;
            let gens = ab.generators();
            let rank = ab.rank()?;
            Ok(Output::new(
                format!("rank {rank}\n{}\n", print_generators(&gens, ctx.syntax)),
                json!({ "rank": rank, "generators": ctx.generators_json(&gens) }),
            )
            .with_dot(dot::core_graph(ab.underlying(), Some(ab.voltages()), ctx.syntax)))
        }
        Command::Verify { pair, random: false } => {
            let (a, b) = ctx.pair(pair)?;
            let r = verify_bound(&a.voltage_graph()?, &b.voltage_graph()?)?;
            let mut out = Output::new(report_text(&r), report_json(&r));
            out.exit = if r.holds { 0 } else { 3 };
            Ok(out)
        }
        Command::Verify { pair, random: true } => {
            let n = pair.modulus.max(1);
            let instances = verify_random(ctx.rank, n, cli.seed, cli.count)?;
            let violations: Vec<u64> = instances.iter().filter(|i| !i.report.holds).map(|i| i.index).collect();
            let sharp = instances.iter().filter(|i| i.report.equality).count();
            let mut text = format!(
                "instances {}\nequality {sharp}\nviolations {}\n",
                instances.len(),
                violations.len()
            );
            for i in instances.iter().filter(|i| !i.report.holds) {
                text += &format!(
                    "violation at instance {}: A = {}; B = {}\n",
                    i.index,
                    print_generators(&i.gens_a, ctx.syntax),
                    print_generators(&i.gens_b, ctx.syntax)
                );
            }
            let reports: Vec<Value> = instances
                .iter()
                .map(|i| {
                    let mut r = report_json(&i.report);
                    r["index"] = json!(i.index);
                    r["a"] = ctx.generators_json(&i.gens_a);
                    r["b"] = ctx.generators_json(&i.gens_b);
                    r
                })
                .collect();
            let mut out = Output::new(
                text,
                json!({
                    "ambientRank": ctx.rank,
                    "modulus": n,
                    "seed": cli.seed,
                    "count": cli.count,
                    "equalityCount": sharp,
                    "violations": violations,
                    "instances": reports,
                }),
            );
            out.exit = if violations.is_empty() { 0 } else { 3 };
            Ok(out)
        }
        Command::Extremal { k, l, n, verify } => {
            let (a, b) = extremal_family(*k, *l, *n)?;
            let (ga, gb) = (a.generators(), b.generators());
            let mut text = format!(
                "A = {}\nB = {}\n",
                print_generators(&ga, ctx.syntax),
                print_generators(&gb, ctx.syntax)
            );
            let mut fields = json!({
                "k": k, "l": l, "n": n,
                "a": ctx.generators_json(&ga),
                "b": ctx.generators_json(&gb),
            });
            let mut exit = 0;
            if *verify {
                let r = verify_bound(&a, &b)?;
                text += &report_text(&r);
                fields["report"] = report_json(&r);
                exit = if r.holds { 0 } else { 3 };
            }
            let mut out = Output::new(text, fields);
            out.exit = exit;
            Ok(out)
        }
        Command::ReducedRank(g) => {
            let g = parse_graph(g)?;
            let r = g.reduced_rank();
            Ok(Output::new(
                format!("{r}\n"),
                json!({ "reducedRank": r, "eulerCharacteristics": g.component_euler_characteristics() }),
            )
            .with_dot(dot::finite_graph(&g, &BTreeSet::new())))
        }
        Command::EssentialSet(g) => {
            let g = parse_graph(g)?;
            let e = g.max_essential_set();
            let ids: Vec<usize> = e.iter().map(|id| id.0).collect();
            let text = ids.iter().map(|i| format!("e{i}")).collect::<Vec<_>>().join(" ");
            Ok(Output::new(
                format!("{text}\n"),
                json!({ "edges": ids, "reducedRank": g.reduced_rank() }),
            )
            .with_dot(dot::finite_graph(&g, &e)))
        }
        Command::Order { u, v } => {
            let (u, v) = (ctx.word(u)?, ctx.word(v)?);
            let verdict = match compare(&u, &v)? {
                std::cmp::Ordering::Less => "LESS",
                std::cmp::Ordering::Equal => "EQUAL",
                std::cmp::Ordering::Greater => "GREATER",
            };
            Ok(Output::new(
                format!("{verdict}\n"),
                json!({ "u": print_word(&u, ctx.syntax), "v": print_word(&v, ctx.syntax), "order": verdict }),
            ))
        }
        Command::Ball { radius, copies } => {
            let b = ForestBall::build(ctx.rank, *radius)?.induce(*copies)?;
            Ok(Output::new(
                format!("vertices {}\nedges {}\n", b.vertex_count(), b.edge_count()),
                json!({
                    "rank": ctx.rank, "radius": radius, "copies": copies,
                    "vertices": b.vertex_count(), "edges": b.edge_count(),
                }),
            )
            .with_dot(dot::ball(&b, &BTreeSet::new(), ctx.syntax)))
        }
        Command::Certify {
            subgroup: s,
            radius,
            depth,
        } => {
            let h = ctx.subgroup(s.generators.as_deref(), s.file.as_ref(), s.modulus)?;
            let gens: Vec<GroupElement> = h
                .generators
                .iter()
                .map(|(w, c)| GroupElement::new(w.clone(), *c))
                .collect();
            let copies = h.modulus as usize;
            let b = ForestBall::build(h.rank, *radius)?.induce(copies)?;
            let cert = b.certify_order_essential(&gens, *depth)?;
            let reduced_rank = VoltageGraph::fold(&h.generators, h.rank, h.modulus)?
                .underlying()
                .to_finite_graph()
                .reduced_rank();
            let reps: Vec<Value> = cert
                .orbits
                .representatives
                .iter()
                .map(|&e| {
                    json!({
                        "copy": e.copy,
                        "anchor": print_word(b.anchor(e), ctx.syntax),
                        "generator": b.generator(e),
                        "orderRank": b.order_rank(e),
                    })
                })
                .collect();
            let mut text = format!(
                "certified edges {}\norbits {}\nexpected {} (copies × reduced rank)\n",
                cert.certified.len(),
                cert.orbits.orbits,
                copies * reduced_rank
            );
            for &e in &cert.orbits.representatives {
                let (s, t) = b.endpoints(e);
                text += &format!(
                    "copy {} edge ({}, {}) #{}\n",
                    e.copy,
                    print_word(b.word(s), ctx.syntax),
                    print_word(b.word(t), ctx.syntax),
                    b.order_rank(e)
                );
            }
            if cert.subforest.truncated {
                text += "subforest truncated by the ball\n";
            }
            let highlighted: BTreeSet<_> = cert.certified.iter().copied().collect();
            Ok(Output::new(
                text,
                json!({
                    "radius": radius, "depth": depth, "copies": copies,
                    "certifiedEdges": cert.certified.len(),
                    "orbits": cert.orbits.orbits,
                    "expected": copies * reduced_rank,
                    "representatives": reps,
                    "wordBound": cert.orbits.word_bound,
                    "truncated": cert.subforest.truncated,
                }),
            )
            .with_dot(dot::ball(&b, &highlighted, ctx.syntax)))
        }
    }
}
