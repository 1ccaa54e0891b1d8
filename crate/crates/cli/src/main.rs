//! Command line front end for the language-theory library.
//!
//! Every verb maps to one library operation; outputs are byte
//! deterministic for fixed inputs. Exit codes: 0 on success, 1 on usage
//! errors, 2 on domain errors (reported as one JSON object on stderr).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use booltop_core::measure::{
    circ_relative, complexity, joint_space, matrix_language_space, relative_complexity,
    LanguageMatrix,
};
use booltop_core::pairing::{
    dotless_theory, extended_gram, pairing_state_space, DotlessCase, PairingTheory,
};
use booltop_core::theory::{
    canonical_circular, general_state_space, half_state_space, id_decomposition, minimal_nfas,
    pm_state_space, tqft_check, Evaluation, HalfSide, PmDiagram, SignSeq,
};
use booltop_core::{Alphabet, CircularDfa, Dfa, Error, Limits, TransitionMonoid};

#[derive(Parser)]
#[command(name = "booltop", version, about = "Boolean-semiring topological language theories")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Args)]
struct Common {
    /// Alphabet letters, e.g. "ab".
    #[arg(long)]
    alphabet: Option<String>,
    /// Interval-language regex; may repeat for multi-language verbs.
    #[arg(long)]
    regex: Vec<String>,
    /// Circular-language regex (must be rotation closed).
    #[arg(long = "circ-regex")]
    circ_regex: Option<String>,
    /// Input JSON file for verbs that read a serialized object.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Size bound for bounded searches (sign-sequence totals, oracles).
    #[arg(long = "max-len")]
    max_len: Option<usize>,
    /// Overrides the element ceiling (also settable via BOOLTOP_LIMIT).
    #[arg(long)]
    limit: Option<usize>,
    /// Sign sequence such as "+-".
    #[arg(long)]
    eps: Option<String>,
    /// Letter for the cyclic derivative.
    #[arg(long)]
    letter: Option<char>,
    /// Deduplicate minimal NFAs up to isomorphism.
    #[arg(long)]
    dedup: bool,
    /// Dotless theory case 1..=4 for the pairing verb without --in.
    #[arg(long = "case")]
    case: Option<u8>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimal DFA of a regex.
    MinDfa(Common),
    /// All minimal NFAs accepting the language.
    MinNfa(Common),
    /// Transition monoid of the minimal DFA.
    Monoid(Common),
    /// Minimal deterministic circular automaton.
    CircMin(Common),
    /// State space of a sign sequence for an evaluation.
    StateSpace(Common),
    /// The plus-minus space with its Gram matrix and product.
    PmSpace(Common),
    /// Decomposition of the identity, when the language is cuttable.
    Cuttable(Common),
    /// Canonical circular language of a cuttable language.
    CanonicalCirc(Common),
    /// Topological-theory test for an evaluation.
    Tqft(Common),
    /// Complexity of a language.
    Complexity(Common),
    /// Joint and conditional complexity of several languages.
    Joint(Common),
    /// Pairing-matrix theory (from --in JSON) or a dotless case.
    Pairing(Common),
    /// Cyclic derivative of a circular language by a letter.
    DeriveCyclic(Common),
    /// Check the circular-automaton axioms of a serialized DCFA.
    Validate(Common),
}

enum CliError {
    Usage(String),
    Domain(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(e)) => {
            eprintln!(
                "{}",
                serde_json::json!({"error": e.kind(), "message": e.to_string()})
            );
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("{}", serde_json::json!({"error": "Io", "message": msg}));
            ExitCode::from(2)
        }
    }
}

fn run(cmd: &Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::MinDfa(c) => min_dfa(c),
        Cmd::MinNfa(c) => min_nfa(c),
        Cmd::Monoid(c) => monoid(c),
        Cmd::CircMin(c) => circ_min(c),
        Cmd::StateSpace(c) => state_space(c),
        Cmd::PmSpace(c) => pm_space(c),
        Cmd::Cuttable(c) => cuttable(c),
        Cmd::CanonicalCirc(c) => canonical_circ(c),
        Cmd::Tqft(c) => tqft(c),
        Cmd::Complexity(c) => complexity_cmd(c),
        Cmd::Joint(c) => joint(c),
        Cmd::Pairing(c) => pairing(c),
        Cmd::DeriveCyclic(c) => derive_cyclic(c),
        Cmd::Validate(c) => validate(c),
    }
}

fn alphabet(c: &Common) -> Result<Alphabet, CliError> {
    match &c.alphabet {
        Some(s) => Ok(Alphabet::new(s)?),
        None => Err(CliError::Usage("--alphabet is required".into())),
    }
}

fn one_regex(c: &Common) -> Result<&str, CliError> {
    match c.regex.as_slice() {
        [r] => Ok(r),
        [] => Err(CliError::Usage("--regex is required".into())),
        _ => Err(CliError::Usage("exactly one --regex is expected".into())),
    }
}

fn circ_regex(c: &Common) -> Result<&str, CliError> {
    c.circ_regex
        .as_deref()
        .ok_or_else(|| CliError::Usage("--circ-regex is required".into()))
}

fn limits(c: &Common) -> Limits {
    let mut l = Limits::from_env();
    if let Some(n) = c.limit {
        l.max_elements = n;
    }
    l
}

fn evaluation(c: &Common) -> Result<Evaluation, CliError> {
    let a = alphabet(c)?;
    Ok(Evaluation::from_regexes(one_regex(c)?, circ_regex(c)?, &a)?)
}

fn read_input<T: serde::de::DeserializeOwned>(c: &Common, what: &str) -> Result<T, CliError> {
    let path = c
        .input
        .as_ref()
        .ok_or_else(|| CliError::Usage(format!("--in FILE.json with a {what} is required")))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(c: &Common, content: &str) -> Result<(), CliError> {
    match &c.out {
        Some(path) => std::fs::write(path, content).map_err(|e| CliError::Io(e.to_string())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(c: &Common, value: &T) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    emit(c, &s)
}

fn no_dot(c: &Common, verb: &str) -> Result<(), CliError> {
    if c.format == Format::Dot {
        Err(CliError::Usage(format!("{verb} has no dot output")))
    } else {
        Ok(())
    }
}

fn dfa_table(d: &Dfa) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "states: {}  init: {}", d.states, d.init);
    let _ = writeln!(
        s,
        "accepting: {}",
        d.accepting.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" ")
    );
    for q in 0..d.states {
        let row: Vec<String> = (0..d.alphabet.len())
            .map(|a| format!("{}:{}", d.alphabet.letter(a as u8), d.delta[q][a]))
            .collect();
        let _ = writeln!(s, "q{}  {}", q, row.join("  "));
    }
    s
}

fn emit_dfa(c: &Common, d: &Dfa) -> Result<(), CliError> {
    match c.format {
        Format::Json => emit_json(c, d),
        Format::Dot => emit(c, &d.to_dot()),
        Format::Table => emit(c, &dfa_table(d)),
    }
}

fn min_dfa(c: &Common) -> Result<(), CliError> {
    let a = alphabet(c)?;
    let d = Dfa::from_regex_str(one_regex(c)?, &a)?;
    emit_dfa(c, &d)
}

fn min_nfa(c: &Common) -> Result<(), CliError> {
    no_dot(c, "min-nfa")?;
    let a = alphabet(c)?;
    let d = Dfa::from_regex_str(one_regex(c)?, &a)?;
    let h = half_state_space(&d, HalfSide::Minus);
    let lim = limits(c);
    let out = minimal_nfas(&h, lim.max_elements, c.dedup)?;
    match c.format {
        Format::Json => emit_json(
            c,
            &serde_json::json!({"count": out.count.to_string(), "nfas": out.nfas}),
        ),
        Format::Table => {
            let mut s = format!("minimal NFAs: {}\n", out.count);
            let _ = writeln!(s, "states per NFA: {}", h.space.irreducibles().len());
            emit(c, &s)
        }
        Format::Dot => unreachable!(),
    }
}

fn monoid(c: &Common) -> Result<(), CliError> {
    no_dot(c, "monoid")?;
    let a = alphabet(c)?;
    let d = Dfa::from_regex_str(one_regex(c)?, &a)?;
    let m = TransitionMonoid::new(&d);
    let reps: Vec<String> = (0..m.len()).map(|e| a.format_word(m.rep(e))).collect();
    let accepting: Vec<usize> = (0..m.len()).filter(|&e| m.accepts(e)).collect();
    let mult: Vec<Vec<usize>> = (0..m.len())
        .map(|e| (0..m.len()).map(|f| m.mul(e, f)).collect())
        .collect();
    match c.format {
        Format::Json => emit_json(
            c,
            &serde_json::json!({
                "elements": reps,
                "identity": m.identity(),
                "accepting": accepting,
                "mult": mult,
            }),
        ),
        Format::Table => {
            let mut s = format!("elements: {}\n", reps.join(" "));
            let _ = writeln!(
                s,
                "accepting: {}",
                accepting.iter().map(|e| reps[*e].clone()).collect::<Vec<_>>().join(" ")
            );
            for (e, row) in mult.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|f| reps[*f].clone()).collect();
                let _ = writeln!(s, "{}  | {}", reps[e], cells.join(" "));
            }
            emit(c, &s)
        }
        Format::Dot => unreachable!(),
    }
}

fn circ_min(c: &Common) -> Result<(), CliError> {
    let a = alphabet(c)?;
    let d = Dfa::from_regex_str(circ_regex(c)?, &a)?;
    let m = CircularDfa::minimal_dcfa(&d)?;
    match c.format {
        Format::Json => emit_json(c, &m),
        Format::Dot => emit(c, &m.to_dot()),
        Format::Table => {
            let mut s = format!("states: {}  init: {}\n", m.states, m.init);
            let _ = writeln!(
                s,
                "accepting: {}",
                m.accepting.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" ")
            );
            for q in 0..m.states {
                let row: Vec<String> = (0..m.alphabet.len())
                    .map(|x| {
                        format!(
                            "{}: l->{} r->{}",
                            m.alphabet.letter(x as u8),
                            m.delta_l[q][x],
                            m.delta_r[q][x]
                        )
                    })
                    .collect();
                let _ = writeln!(s, "q{}  {}", q, row.join("  "));
            }
            emit(c, &s)
        }
    }
}

fn state_space(c: &Common) -> Result<(), CliError> {
    no_dot(c, "state-space")?;
    let ev = evaluation(c)?;
    let eps = SignSeq::parse(
        c.eps
            .as_deref()
            .ok_or_else(|| CliError::Usage("--eps is required".into()))?,
    )?;
    let g = general_state_space(&ev, &eps, &limits(c))?;
    let irr = g.space.irreducibles().len();
    let card = g.space.len();
    let free = g.space.is_distributive() && card == 1usize << irr;
    match c.format {
        Format::Json => emit_json(
            c,
            &serde_json::json!({
                "eps": eps.to_string(),
                "spanning": g.spanning.len(),
                "gram": g.gram,
                "cardinality": card,
                "irreducibles": irr,
                "free": free,
            }),
        ),
        Format::Table => {
            let s = format!(
                "eps {}: {} spanning diagrams, cardinality {}, {} irreducibles{}\n",
                eps,
                g.spanning.len(),
                card,
                irr,
                if free { " (free)" } else { "" }
            );
            emit(c, &s)
        }
        Format::Dot => unreachable!(),
    }
}

fn pm_diagram_name(pm: &booltop_core::theory::PmStateSpace, a: &Alphabet, d: &PmDiagram) -> String {
    match *d {
        PmDiagram::Arc(e) => format!("arc({})", a.format_word(pm.monoid.rep(e))),
        PmDiagram::Pair { plus, minus } => format!(
            "pair({},{})",
            a.format_word(&pm.plus_reps[plus]),
            a.format_word(&pm.minus_reps[minus])
        ),
    }
}

fn pm_space(c: &Common) -> Result<(), CliError> {
    no_dot(c, "pm-space")?;
    let ev = evaluation(c)?;
    let a = ev.alphabet.clone();
    let pm = pm_state_space(&ev)?;
    let names: Vec<String> = pm
        .spanning
        .iter()
        .map(|d| pm_diagram_name(&pm, &a, d))
        .collect();
    match c.format {
        Format::Json => emit_json(
            c,
            &serde_json::json!({
                "spanning": names,
                "gram": pm.gram,
                "cardinality": pm.space.len(),
                "irreducibles": pm.space.irreducibles().len(),
            }),
        ),
        Format::Table => {
            let width = names.iter().map(|n| n.len()).max().unwrap_or(0);
            let mut s = String::new();
            for (i, n) in names.iter().enumerate() {
                let _ = writeln!(s, "{:width$}  {}", n, pm.gram.row(i).to_bit_string());
            }
            let _ = writeln!(
                s,
                "cardinality {}, {} irreducibles",
                pm.space.len(),
                pm.space.irreducibles().len()
            );
            emit(c, &s)
        }
        Format::Dot => unreachable!(),
    }
}

fn cuttable(c: &Common) -> Result<(), CliError> {
    no_dot(c, "cuttable")?;
    let a = alphabet(c)?;
    let d = Dfa::from_regex_str(one_regex(c)?, &a)?;
    let dec = id_decomposition(&d)?;
    let pairs: Vec<serde_json::Value> = dec
        .pairs
        .iter()
        .map(|(v, u)| serde_json::json!({"v": v, "u": u}))
        .collect();
    match c.format {
        Format::Json => emit_json(
            c,
            &serde_json::json!({
                "cuttable": true,
                "pairs": pairs,
                "minus_cardinality": dec.minus.space.len(),
                "plus_cardinality": dec.plus.space.len(),
            }),
        ),
        Format::Table => {
            let mut s = format!("cuttable: {} pairs\n", dec.pairs.len());
            for (v, u) in &dec.pairs {
                let _ = writeln!(s, "v {}  u {}", v.to_bit_string(), u.to_bit_string());
            }
            emit(c, &s)
        }
        Format::Dot => unreachable!(),
    }
}

fn canonical_circ(c: &Common) -> Result<(), CliError> {
    let a = alphabet(c)?;
    let d = Dfa::from_regex_str(one_regex(c)?, &a)?;
    let canon = canonical_circular(&d)?;
    emit_dfa(c, &canon)
}

fn tqft(c: &Common) -> Result<(), CliError> {
    no_dot(c, "tqft")?;
    let ev = evaluation(c)?;
    let max_len = c.max_len.unwrap_or(2);
    let r = tqft_check(&ev, max_len, &limits(c))?;
    let comparisons: Vec<serde_json::Value> = r
        .comparisons
        .iter()
        .map(|(e1, e2, t)| {
            serde_json::json!({
                "left": e1.to_string(),
                "right": e2.to_string(),
                "tensor": t.tensor_card,
                "reduced": t.reduced_card,
                "target": t.target_card,
                "image": t.image_card,
                "injective": t.injective,
                "surjective": t.surjective,
            })
        })
        .collect();
    match c.format {
        Format::Json => emit_json(
            c,
            &serde_json::json!({
                "cuttable": r.cuttable,
                "canonical_matches": r.canonical_matches,
                "is_tqft": r.is_tqft,
                "max_len": max_len,
                "comparisons": comparisons,
            }),
        ),
        Format::Table => {
            let s = format!(
                "cuttable {}  canonical {}  tqft {} (gluings up to {} points)\n",
                r.cuttable, r.canonical_matches, r.is_tqft, max_len
            );
            emit(c, &s)
        }
        Format::Dot => unreachable!(),
    }
}

fn complexity_cmd(c: &Common) -> Result<(), CliError> {
    no_dot(c, "complexity")?;
    let a = alphabet(c)?;
    let d = Dfa::from_regex_str(one_regex(c)?, &a)?;
    let r = complexity(&d);
    match c.format {
        Format::Json => emit_json(c, &r),
        Format::Table => emit(
            c,
            &format!("cardinality {}  log2 {}\n", r.cardinality, r.log2),
        ),
        Format::Dot => unreachable!(),
    }
}

fn joint(c: &Common) -> Result<(), CliError> {
    no_dot(c, "joint")?;
    let a = alphabet(c)?;
    if c.regex.is_empty() {
        if let Some(path) = &c.input {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(e.to_string()))?;
            let lm: LanguageMatrix =
                serde_json::from_str(&text).map_err(|e| CliError::Io(e.to_string()))?;
            let space = matrix_language_space(&lm, &limits(c))?;
            return emit_json(
                c,
                &serde_json::json!({
                    "cardinality": space.len(),
                    "irreducibles": space.irreducibles().len(),
                }),
            );
        }
        return Err(CliError::Usage(
            "joint needs --regex (repeatable) or --in with a language matrix".into(),
        ));
    }
    let dfas: Vec<Dfa> = c
        .regex
        .iter()
        .map(|r| Dfa::from_regex_str(r, &a))
        .collect::<Result<_, _>>()?;
    let refs: Vec<&Dfa> = dfas.iter().collect();
    let lim = limits(c);
    let space = joint_space(&refs, &lim)?;
    let singles: Vec<_> = dfas.iter().map(complexity).collect();
    let conditional = if dfas.len() == 2 {
        Some(relative_complexity(&dfas[0], &dfas[1], &lim)?.conditional_log2)
    } else {
        None
    };
    let circ = if c.circ_regex.is_some() {
        let ev = evaluationish(c, &a)?;
        Some(circ_relative(&ev, &lim)?)
    } else {
        None
    };
    match c.format {
        Format::Json => emit_json(
            c,
            &serde_json::json!({
                "joint_cardinality": space.len(),
                "singles": singles,
                "conditional_log2": conditional,
                "circ_relative": circ,
            }),
        ),
        Format::Table => {
            let mut s = format!("joint cardinality {}\n", space.len());
            for (r, comp) in c.regex.iter().zip(&singles) {
                let _ = writeln!(s, "{r}: cardinality {}", comp.cardinality);
            }
            if let Some(x) = conditional {
                let _ = writeln!(s, "conditional log2: {x}");
            }
            emit(c, &s)
        }
        Format::Dot => unreachable!(),
    }
}

/// Evaluation from the first regex and the circular regex, for verbs
/// that take several regexes.
fn evaluationish(c: &Common, a: &Alphabet) -> Result<Evaluation, CliError> {
    Ok(Evaluation::from_regexes(
        &c.regex[0],
        circ_regex(c)?,
        a,
    )?)
}

fn pairing(c: &Common) -> Result<(), CliError> {
    no_dot(c, "pairing")?;
    if let Some(n) = c.case {
        let case = DotlessCase::from_number(n)
            .ok_or_else(|| CliError::Usage("--case must be 1, 2, 3 or 4".into()))?;
        let ev = dotless_theory(case);
        let max = c.max_len.unwrap_or(4);
        let lim = limits(c);
        let mut spaces = Vec::new();
        for eps in sign_seqs_up_to(max) {
            let g = general_state_space(&ev, &eps, &lim)?;
            spaces.push(serde_json::json!({
                "eps": eps.to_string(),
                "cardinality": g.space.len(),
            }));
        }
        return emit_json(c, &serde_json::json!({"case": n, "spaces": spaces}));
    }
    let t: PairingTheory = read_input(c, "pairing theory")?;
    let gram = extended_gram(&t);
    let space = pairing_state_space(&t, &limits(c))?;
    match c.format {
        Format::Json => emit_json(
            c,
            &serde_json::json!({
                "gram": gram,
                "cardinality": space.len(),
                "irreducibles": space.irreducibles().len(),
            }),
        ),
        Format::Table => {
            let n = t.matrix.rows * t.matrix.cols;
            let mut s = String::new();
            for i in 0..=n {
                let name = if i == n {
                    "cup".to_string()
                } else {
                    format!("({},{})", i / t.matrix.cols, i % t.matrix.cols)
                };
                let _ = writeln!(s, "{:6}  {}", name, gram.row(i).to_bit_string());
            }
            emit(c, &s)
        }
        Format::Dot => unreachable!(),
    }
}

fn sign_seqs_up_to(max: usize) -> Vec<SignSeq> {
    let mut out = vec![SignSeq(Vec::new())];
    let mut layer = out.clone();
    for _ in 0..max {
        layer = layer
            .iter()
            .flat_map(|s| {
                ["+", "-"]
                    .iter()
                    .map(move |x| SignSeq::parse(&format!("{s}{x}")).unwrap())
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn derive_cyclic(c: &Common) -> Result<(), CliError> {
    let a = alphabet(c)?;
    let d = Dfa::from_regex_str(circ_regex(c)?, &a)?;
    let letter = c
        .letter
        .ok_or_else(|| CliError::Usage("--letter is required".into()))?;
    let idx = a
        .index(letter)
        .ok_or(Error::UnknownLetter { letter })?;
    let nfa = booltop_core::lang::cyclic_derivative_lang(&d, idx)?;
    match c.format {
        Format::Json => emit_json(c, &nfa),
        Format::Dot => emit(c, &nfa.to_dot()),
        Format::Table => {
            let min = nfa.determinize().minimize();
            emit(c, &dfa_table(&min))
        }
    }
}

fn validate(c: &Common) -> Result<(), CliError> {
    no_dot(c, "validate")?;
    let dcfa: CircularDfa = read_input(c, "circular automaton")?;
    let violations = dcfa.validate();
    match c.format {
        Format::Json => emit_json(
            c,
            &serde_json::json!({
                "valid": violations.is_empty(),
                "violations": violations
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>(),
            }),
        ),
        Format::Table => {
            let mut s = String::new();
            if violations.is_empty() {
                s.push_str("valid\n");
            } else {
                for v in &violations {
                    let _ = writeln!(s, "{v}");
                }
            }
            emit(c, &s)
        }
        Format::Dot => unreachable!(),
    }
}
