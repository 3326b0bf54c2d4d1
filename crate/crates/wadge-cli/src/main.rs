mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use wadge::coding::{p_code, pair, parse_word, q_code, show_word, unpair, word_index, Alphabet, Word};
use wadge::complete_sets::{c_xi_eps_member, c_xi_member, h_member, v_eps_member, ConstructionTerm};
use wadge::descriptions::{desc_tree, is_normalized, lift, normalize, validate, Desc};
use wadge::frame_tree::{
    build_selector, check_selector, recipe_delta, s_c_member, BranchRecipe, DenseFamily, Frame, SelectorOptions,
};
use wadge::levels::TupleSet;
use wadge::ordinals::{Kind, Ord};
use wadge::sequences::{rho0_pow, tau_seq_pull, BitSeq};
use wadge::shift_system::SystemState;
use wadge::{suite, Nat};

use report::{literal, runtime, Failure, Output};

#[derive(Parser)]
#[command(name = "wadge", version, about = "Symbolic kernel for potential Wadge classes")]
struct Cli {
    /// Also write a JSON report to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Integer and word codings.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Ordinal arithmetic below ω^ω.
    #[command(subcommand)]
    Ord(OrdCmd),
    /// Symbolic binary sequences.
    #[command(subcommand)]
    Seq(SeqCmd),
    /// Frame elements and steps.
    #[command(subcommand)]
    Frame(FrameCmd),
    /// Levels of the frame tree.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// One-sidedness, almost acyclicity and basepoint partitions.
    #[command(subcommand)]
    Levels(LevelsCmd),
    /// The frame-index selector for the trivial dense family.
    #[command(subcommand)]
    Selector(SelectorCmd),
    /// Description codes.
    #[command(subcommand)]
    Desc(DescCmd),
    /// Membership in complete sets.
    #[command(subcommand)]
    Eval(EvalCmd),
    /// Branch profiles from step recipes.
    #[command(subcommand)]
    Branch(BranchCmd),
    /// The shift system and its identity.
    #[command(subcommand)]
    Shiftsys(ShiftCmd),
    /// Run all acceptance checks.
    Suite,
}

#[derive(Subcommand)]
enum CodeCmd {
    Pair { a: String, b: String },
    Unpair { l: String },
    /// `p(s)`; words are `0110`, `<3,10>` or `e`.
    P { word: String },
    Q { word: String },
    /// The `n`-th word over `d` in length-lexicographic order.
    Word {
        n: String,
        #[arg(long, default_value = "2")]
        d: String,
    },
}

#[derive(Subcommand)]
enum OrdCmd {
    Add { a: String, b: String },
    /// Left subtraction: the θ with b + θ = a.
    Sub { a: String, b: String },
    Classify { a: String },
    Fund { a: String, m: u64 },
}

#[derive(Subcommand)]
enum SeqCmd {
    Eval { seq: String, n: String },
    Window {
        seq: String,
        #[arg(long, default_value_t = 64)]
        window: u64,
    },
    /// `ρ₀^η`.
    Rho {
        seq: String,
        #[arg(long, default_value = "1")]
        eta: String,
        #[arg(long, default_value_t = 64)]
        window: u64,
    },
    /// `τ̃_s`.
    Tau {
        seq: String,
        #[arg(long)]
        s: String,
        #[arg(long, default_value_t = 64)]
        window: u64,
    },
}

#[derive(Args)]
struct DArg {
    /// Alphabet size, or `w`.
    #[arg(long, default_value = "2")]
    d: String,
}

#[derive(Subcommand)]
enum FrameCmd {
    Elem {
        l: String,
        i: u64,
        #[command(flatten)]
        d: DArg,
    },
    Tuple {
        l: String,
        #[command(flatten)]
        d: DArg,
    },
    Step {
        q: String,
        p: String,
        r: String,
        t: String,
        #[command(flatten)]
        d: DArg,
    },
}

#[derive(Subcommand)]
enum TreeCmd {
    Level {
        l: usize,
        #[command(flatten)]
        d: DArg,
    },
    /// Checks prefix closure, one-sidedness and almost acyclicity.
    Verify {
        #[command(flatten)]
        d: DArg,
        #[arg(long, default_value_t = 8)]
        max_l: usize,
        #[arg(long, default_value_t = 8)]
        cycle_bound: usize,
    },
}

#[derive(Subcommand)]
enum LevelsCmd {
    /// Tuples as `0,1;0,2;1,1`.
    Check {
        tuples: String,
        #[arg(long, default_value_t = 8)]
        cycle_bound: usize,
    },
}

#[derive(Subcommand)]
enum SelectorCmd {
    Build {
        #[command(flatten)]
        d: DArg,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum DescCmd {
    Validate { desc: String },
    Normalize { desc: String },
    Lift {
        desc: String,
        #[arg(long)]
        eta: String,
    },
    Code {
        desc: String,
        #[arg(long, default_value_t = 8)]
        len: u64,
    },
    Tree { desc: String },
    /// A construction term building a normalized description.
    Elaborate { desc: String },
}

#[derive(Subcommand)]
enum EvalCmd {
    H {
        #[arg(long)]
        term: String,
        #[arg(long)]
        seq: String,
    },
    /// `C_ξ`, or `C_ξ^ε` with `--eps`.
    Cxi {
        #[arg(long)]
        xi: String,
        #[arg(long)]
        eps: Option<u8>,
        #[arg(long)]
        seq: String,
    },
    /// `V_ε` for `ξ = 1 + η`.
    Veps {
        #[arg(long)]
        xi: String,
        #[arg(long)]
        eps: u8,
        #[arg(long)]
        seq: String,
    },
}

#[derive(Subcommand)]
enum BranchCmd {
    /// Steps are `p:r:t` separated by `;`, with `t` a word.
    Delta {
        #[command(flatten)]
        d: DArg,
        #[arg(long, default_value = "")]
        steps: String,
        #[arg(long)]
        cycle: String,
        #[arg(long, default_value_t = 64)]
        window: usize,
        /// Also report membership of the branch in `S_{C_ξ}`.
        #[arg(long)]
        xi: Option<String>,
        #[arg(long)]
        eps: Option<u8>,
    },
}

#[derive(Subcommand)]
enum ShiftCmd {
    Check {
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = 128)]
        window: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        density_len: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let (code, report) = match run(&cli) {
        Ok(out) => {
            let _ = writeln!(std::io::stdout(), "{}", out.text);
            (u8::from(!out.ok), json!({ "command": argv, "ok": out.ok, "result": out.json }))
        }
        Err(f) => {
            eprintln!("{f}");
            let code = f.exit_code();
            (code, json!({ "command": argv, "ok": false, "exit_code": code, "error": f.to_string() }))
        }
    };
    if let Some(path) = &cli.json {
        let body = serde_json::to_string_pretty(&report).expect("serializable report");
        if let Err(e) = std::fs::write(path, body + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.cmd {
        Cmd::Code(c) => code(c),
        Cmd::Ord(c) => ord(c),
        Cmd::Seq(c) => seq(c),
        Cmd::Frame(c) => frame(c),
        Cmd::Tree(c) => tree(c),
        Cmd::Levels(c) => levels(c),
        Cmd::Selector(c) => selector(c),
        Cmd::Desc(c) => desc(c),
        Cmd::Eval(c) => eval(c),
        Cmd::Branch(c) => branch(c),
        Cmd::Shiftsys(c) => shiftsys(c, cli.seed),
        Cmd::Suite => run_suite(cli.seed),
    }
}

fn nat_arg(s: &str) -> Result<Nat, Failure> {
    s.trim().parse().map_err(|_| Failure::input("natural number", s, "expected decimal digits"))
}

fn word_arg(s: &str) -> Result<Word, Failure> {
    parse_word(s).ok_or_else(|| Failure::input("word", s, "expected digits, <a,b,..> or e"))
}

fn alphabet(d: &DArg) -> Result<Alphabet, Failure> {
    match d.d.trim() {
        "w" | "omega" => Ok(Alphabet::Omega),
        s => {
            let n: u64 = s.parse().map_err(|_| Failure::input("alphabet", s, "expected a size or w"))?;
            Alphabet::new(n).map_err(|e| Failure::input("alphabet", s, e.to_string()))
        }
    }
}

fn bits(w: &[bool]) -> String {
    w.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn code(c: &CodeCmd) -> Result<Output, Failure> {
    match c {
        CodeCmd::Pair { a, b } => {
            let v = pair(&nat_arg(a)?, &nat_arg(b)?);
            Ok(Output::ok(v.to_string(), json!(v.to_string())))
        }
        CodeCmd::Unpair { l } => {
            let (a, b) = unpair(&nat_arg(l)?);
            Ok(Output::ok(format!("{a} {b}"), json!([a.to_string(), b.to_string()])))
        }
        CodeCmd::P { word } | CodeCmd::Q { word } => {
            let w = word_arg(word)?;
            let v = if matches!(c, CodeCmd::P { .. }) { p_code(&w) } else { q_code(&w) };
            let v = v.map_err(|e| Failure::input("word", word, e.to_string()))?;
            Ok(Output::ok(v.to_string(), json!(v.to_string())))
        }
        CodeCmd::Word { n, d } => {
            let w = word_index(alphabet(&DArg { d: d.clone() })?, &nat_arg(n)?);
            Ok(Output::ok(show_word(&w), json!(w)))
        }
    }
}

fn ord(c: &OrdCmd) -> Result<Output, Failure> {
    let lit = |s: &str| literal::<Ord>("ordinal", s);
    match c {
        OrdCmd::Add { a, b } => {
            let v = lit(a)?.add(&lit(b)?);
            Ok(Output::ok(v.to_string(), json!(v.to_string())))
        }
        OrdCmd::Sub { a, b } => {
            let v = lit(a)?.sub(&lit(b)?).map_err(runtime)?;
            Ok(Output::ok(v.to_string(), json!(v.to_string())))
        }
        OrdCmd::Classify { a } => {
            let (kind, pred) = match lit(a)?.classify() {
                Kind::Zero => ("zero", None),
                Kind::Successor(p) => ("successor", Some(p.to_string())),
                Kind::Limit => ("limit", None),
            };
            let text = pred.as_ref().map_or(kind.to_string(), |p| format!("{kind} of {p}"));
            Ok(Output::ok(text, json!({ "kind": kind, "predecessor": pred })))
        }
        OrdCmd::Fund { a, m } => {
            let v = lit(a)?.fundamental_seq(*m).map_err(runtime)?;
            Ok(Output::ok(v.to_string(), json!(v.to_string())))
        }
    }
}

fn seq_lit(s: &str) -> Result<BitSeq, Failure> {
    literal("sequence", s)
}

fn seq_out(b: &BitSeq, window: u64) -> Result<Output, Failure> {
    let w = bits(&b.window(window).map_err(runtime)?);
    Ok(Output::ok(format!("{b}\n{w}"), json!({ "seq": b.to_string(), "window": w })))
}

fn seq(c: &SeqCmd) -> Result<Output, Failure> {
    match c {
        SeqCmd::Eval { seq, n } => {
            let v = seq_lit(seq)?.eval(&nat_arg(n)?).map_err(runtime)?;
            Ok(Output::ok(u8::from(v).to_string(), json!(v)))
        }
        SeqCmd::Window { seq, window } => seq_out(&seq_lit(seq)?, *window),
        SeqCmd::Rho { seq, eta, window } => {
            let eta = literal::<Ord>("ordinal", eta)?;
            seq_out(&rho0_pow(&eta, &seq_lit(seq)?).map_err(runtime)?, *window)
        }
        SeqCmd::Tau { seq, s, window } => seq_out(&tau_seq_pull(&word_arg(s)?, &seq_lit(seq)?).map_err(runtime)?, *window),
    }
}

fn frame(c: &FrameCmd) -> Result<Output, Failure> {
    match c {
        FrameCmd::Elem { l, i, d } => {
            let f = Frame::new(alphabet(d)?);
            let w = f.elem(&nat_arg(l)?, *i).map_err(runtime)?;
            Ok(Output::ok(w.to_string(), json!(w.to_string())))
        }
        FrameCmd::Tuple { l, d } => {
            let f = Frame::new(alphabet(d)?);
            let w = f.tuple(&nat_arg(l)?);
            Ok(Output::ok(w.to_string(), json!(w.to_string())))
        }
        FrameCmd::Step { q, p, r, t, d } => {
            let f = Frame::new(alphabet(d)?);
            let l1 = f.step(&nat_arg(q)?, &nat_arg(p)?, &nat_arg(r)?, &word_arg(t)?).map_err(runtime)?;
            Ok(Output::ok(l1.to_string(), json!(l1.to_string())))
        }
    }
}

fn tree(c: &TreeCmd) -> Result<Output, Failure> {
    match c {
        TreeCmd::Level { l, d } => {
            let f = Frame::new(alphabet(d)?);
            let level = f.tree_level(*l);
            let rows: Vec<String> = level.iter().map(|t| format!("{:?}", t.form)).collect();
            let words: Vec<String> = level
                .iter()
                .map(|t| wadge::frame_tree::SymWord::from_letters(&t.word).to_string())
                .collect();
            let text = words.iter().zip(&rows).map(|(w, f)| format!("{w}  {f}")).collect::<Vec<_>>().join("\n");
            Ok(Output::ok(text, json!({ "size": level.len(), "tuples": words, "forms": rows })))
        }
        TreeCmd::Verify { d, max_l, cycle_bound } => {
            let f = Frame::new(alphabet(d)?);
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            let mut all = true;
            let mut prev: Option<std::collections::BTreeSet<Vec<wadge::frame_tree::Letter>>> = None;
            for l in 0..=*max_l {
                let level = f.tree_level(l);
                let words: std::collections::BTreeSet<_> = level.iter().map(|t| t.word.clone()).collect();
                let closed = prev.as_ref().map_or(true, |p| words.iter().all(|w| p.contains(&w[..l - 1])));
                let ts = f.level_tuple_set(l).map_err(runtime)?;
                let one_sided = ts.is_one_sided();
                let acyclic = ts.is_almost_acyclic_bruteforce(*cycle_bound);
                let ok = closed && one_sided && acyclic;
                all &= ok;
                lines.push(format!(
                    "l={l} size={} prefix_closed={closed} one_sided={one_sided} almost_acyclic={acyclic}",
                    words.len()
                ));
                rows.push(json!({
                    "l": l, "size": words.len(), "prefix_closed": closed,
                    "one_sided": one_sided, "almost_acyclic": acyclic,
                }));
                prev = Some(words);
            }
            lines.push(if all { "all levels suitable".into() } else { "VIOLATION".into() });
            Ok(Output::checked(all, lines.join("\n"), json!({ "levels": rows })))
        }
    }
}

fn levels(c: &LevelsCmd) -> Result<Output, Failure> {
    let LevelsCmd::Check { tuples, cycle_bound } = c;
    let parsed: Vec<Vec<u64>> = tuples
        .split(';')
        .map(|t| t.split(',').map(|x| x.trim().parse::<u64>()).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::input("tuple list", tuples, e.to_string()))?;
    let d = parsed.first().map_or(0, Vec::len);
    let ts = TupleSet::new(d, parsed).map_err(|e| Failure::input("tuple list", tuples, e.to_string()))?;
    let rep = ts.check_equivalence(*cycle_bound);
    let mut parts = Vec::new();
    let mut lines = vec![format!(
        "one_sided={} almost_acyclic={} partitions={:?}",
        rep.one_sided, rep.almost_acyclic, rep.partitions
    )];
    for b in 0..ts.len() {
        if let Ok(p) = ts.partition_for(b) {
            lines.push(format!("basepoint {b}: {:?}", p.blocks));
            parts.push(json!({ "basepoint": b, "blocks": p.blocks }));
        }
    }
    let agrees = rep.agrees();
    if !agrees {
        lines.push("VIOLATION: the two sides disagree".into());
    }
    let body = json!({
        "one_sided": rep.one_sided, "almost_acyclic": rep.almost_acyclic,
        "partitions": rep.partitions, "blocks": parts, "agrees": agrees,
    });
    Ok(Output::checked(agrees, lines.join("\n"), body))
}

fn selector(c: &SelectorCmd) -> Result<Output, Failure> {
    let SelectorCmd::Build { d, depth } = c;
    let fam = DenseFamily::trivial(alphabet(d)?);
    let res = build_selector(&fam, *depth, SelectorOptions::default()).map_err(runtime)?;
    let check = check_selector(&res, &fam);
    let mut lines: Vec<String> = res.entries.iter().map(|e| format!("{:>5}  {}", show_word(&e.t), e.l)).collect();
    let entries: Vec<Value> =
        res.entries.iter().map(|e| json!({ "t": show_word(&e.t), "l": e.l.to_string() })).collect();
    let ok = check.is_ok();
    lines.push(match &check {
        Ok(()) => "conditions hold".into(),
        Err(e) => format!("VIOLATION: {e}"),
    });
    Ok(Output::checked(ok, lines.join("\n"), json!({ "entries": entries, "check": check.err().map(|e| e.to_string()) })))
}

fn desc_lit(s: &str) -> Result<Desc, Failure> {
    literal("description", s)
}

fn desc(c: &DescCmd) -> Result<Output, Failure> {
    match c {
        DescCmd::Validate { desc } => {
            let u = desc_lit(desc)?;
            let body = json!({ "desc": u.to_string(), "head": u.head().to_string(), "valid": validate(&u), "normalized": is_normalized(&u) });
            Ok(Output::ok(format!("valid, head {}", u.head()), body))
        }
        DescCmd::Normalize { desc } => {
            let n = normalize(&desc_lit(desc)?).map_err(runtime)?;
            Ok(Output::ok(n.to_string(), json!(n.to_string())))
        }
        DescCmd::Lift { desc, eta } => {
            let v = lift(&desc_lit(desc)?, &literal("ordinal", eta)?).map_err(runtime)?;
            Ok(Output::ok(v.to_string(), json!(v.to_string())))
        }
        DescCmd::Code { desc, len } => {
            let code: Vec<String> = desc_lit(desc)?.code_prefix(*len).iter().map(|o| o.to_string()).collect();
            Ok(Output::ok(code.join(" "), json!(code)))
        }
        DescCmd::Tree { desc } => {
            let t = desc_tree(&desc_lit(desc)?);
            Ok(Output::ok(format!("size {} height {}", t.size(), t.height()), json!({ "size": t.size(), "height": t.height() })))
        }
        DescCmd::Elaborate { desc } => {
            let t = wadge::complete_sets::elaborate(&desc_lit(desc)?).map_err(runtime)?;
            Ok(Output::ok(t.to_string(), json!(t.to_string())))
        }
    }
}

fn eps_arg(e: u8) -> Result<bool, Failure> {
    match e {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(Failure::input("parity", &e.to_string(), "expected 0 or 1")),
    }
}

fn eval(c: &EvalCmd) -> Result<Output, Failure> {
    let v = match c {
        EvalCmd::H { term, seq } => {
            let t: ConstructionTerm = literal("term", term)?;
            h_member(&t, &seq_lit(seq)?)
        }
        EvalCmd::Cxi { xi, eps: None, seq } => c_xi_member(&literal("ordinal", xi)?, &seq_lit(seq)?),
        EvalCmd::Cxi { xi, eps: Some(e), seq } => c_xi_eps_member(&literal("ordinal", xi)?, eps_arg(*e)?, &seq_lit(seq)?),
        EvalCmd::Veps { xi, eps, seq } => {
            let xi: Ord = literal("ordinal", xi)?;
            let eta = xi.sub(&Ord::finite(1)).map_err(|e| Failure::input("ordinal", &xi.to_string(), e.to_string()))?;
            v_eps_member(eps_arg(*eps)?, &eta, &seq_lit(seq)?)
        }
    }
    .map_err(runtime)?;
    Ok(Output::ok(v.to_string(), json!(v)))
}

fn recipe_steps(s: &str) -> Result<Vec<(u64, u64, Word)>, Failure> {
    s.split(';')
        .filter(|x| !x.trim().is_empty())
        .map(|step| {
            let parts: Vec<&str> = step.split(':').collect();
            let bad = || Failure::input("recipe step", step, "expected p:r:t");
            let [p, r, t] = parts[..] else { return Err(bad()) };
            Ok((p.trim().parse().map_err(|_| bad())?, r.trim().parse().map_err(|_| bad())?, word_arg(t)?))
        })
        .collect()
}

fn branch(c: &BranchCmd) -> Result<Output, Failure> {
    let BranchCmd::Delta { d, steps, cycle, window, xi, eps } = c;
    let rcp = BranchRecipe::new(alphabet(d)?, recipe_steps(steps)?, recipe_steps(cycle)?).map_err(runtime)?;
    let delta = recipe_delta(&rcp).map_err(runtime)?;
    let w = bits(&rcp.delta_window(*window).map_err(runtime)?);
    let mut body = json!({ "delta": delta.to_string(), "window": w });
    let mut text = format!("{delta}\n{w}");
    if let Some(xi) = xi {
        let xi: Ord = literal("ordinal", xi)?;
        let member = match eps {
            None => s_c_member(&rcp, |a| c_xi_member(&xi, a)),
            Some(e) => {
                let e = eps_arg(*e)?;
                s_c_member(&rcp, |a| c_xi_eps_member(&xi, e, a))
            }
        }
        .map_err(runtime)?;
        text.push_str(&format!("\nmember: {member}"));
        body["member"] = json!(member);
    }
    Ok(Output::ok(text, body))
}

fn shiftsys(c: &ShiftCmd, seed: u64) -> Result<Output, Failure> {
    let ShiftCmd::Check { nmax, window, trials, density_len } = c;
    let s = SystemState::new(*nmax + 1);
    let mut rng = suite::rng(seed);
    let inputs: Vec<BitSeq> = (0..*trials).map(|_| suite::gen::ep(&mut rng)).collect();
    let mut pairs = Vec::new();
    let mut lines = Vec::new();
    let mut all = true;
    for p in 1..=*nmax {
        for n in 0..p {
            let mut failure = None;
            for a in &inputs {
                let rep = s.identity_check(n, p, a, *window).map_err(runtime)?;
                if let Some((k, lhs, rhs)) = rep.counterexample {
                    failure = Some(json!({ "input": a.to_string(), "k": k, "lhs": lhs, "rhs": rhs }));
                    break;
                }
            }
            all &= failure.is_none();
            lines.push(format!("n={n} p={p} {}", if failure.is_none() { "pass" } else { "FAIL" }));
            pairs.push(json!({ "n": n, "p": p, "pass": failure.is_none(), "counterexample": failure }));
        }
    }
    let mut chain = true;
    for n in 0..*nmax {
        for x in 0..512 {
            chain &= !s.in_s(n, x).map_err(runtime)? || s.in_s(n + 1, x).map_err(runtime)?;
        }
    }
    lines.push(format!("S_n increasing: {chain}"));
    let mut density = Vec::new();
    for n in 0..=(*nmax).min(3) {
        let rep = s.density_probe(n, *density_len).map_err(runtime)?;
        let mut valid = true;
        for w in &rep.witnesses {
            valid &= s.check_density_witness(n, w).map_err(runtime)?;
        }
        lines.push(format!("D_{n}: {} words witnessed, valid={valid}", rep.witnesses.len()));
        density.push(json!({ "n": n, "words": rep.witnesses.len(), "valid": valid }));
        all &= valid;
    }
    all &= chain;
    let body = json!({ "identity": pairs, "increasing": chain, "density": density });
    Ok(Output::checked(all, lines.join("\n"), body))
}

fn run_suite(seed: u64) -> Result<Output, Failure> {
    let outcomes = suite::run_all(seed);
    let all = outcomes.iter().all(|o| o.passed);
    let text = outcomes.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("\n");
    let rows: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({ "id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail, "millis": o.millis as u64 }))
        .collect();
    Ok(Output::checked(all, text, json!({ "seed": seed, "criteria": rows })))
}
