//! The `monoidkit` command line: one subcommand per module, text or `--json` output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::aset::{enumerate_asets, hom_enumerate, is_isomorphic, split_check, ASet, Base};
use crate::error::{Error, Result};
use crate::extensions::{ext_enumerate, ext_roundtrip, sqz_enumerate, sqz_monoid};
use crate::geometry::affine::AffineMonoid;
use crate::homological::simplicial::{dold_kan_k, moore};
use crate::homological::{adjunction_check, resolve, resolve_monogenic, verify_monogenic, DaComplex, Flavor, ResolveOpts, TruncSimplicialASet};
use crate::io::{absolute, aset_document, complex_document, monoid_document, simplicial_document, Bounds, Object, Workspace};
use crate::linalg::lattice_rank;
use crate::monoid::{FiniteMonoid, MonoidValue};
use crate::projk::{aut_wedge_abelianization, devissage_check, g0, k0, k1, rank_vector, universe_up_to};
use crate::spectra::{associated_primes, dimension, ideal_label, mspec, parse_ideal, primary_decomposition, radical};
use crate::torreal::{chain_of_simplicial, hurewicz_compare, smith_homology};
use crate::util::{DEFAULT_CARRIER_BOUND, DEFAULT_DEGREE_BOUND};

#[derive(Parser, Debug)]
#[command(name = "monoidkit", version, about = "Algebra and geometry over pointed commutative monoids")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Carrier bound for presentations and enumerations; overrides MONOIDKIT_BOUND.
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    /// Degree bound for affine membership tests.
    #[arg(long, global = true)]
    pub degree_bound: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Cap {
    /// Give up with exit 3 after this many maps.
    #[arg(long, default_value_t = 100_000)]
    pub cap: usize,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum FlavorArg {
    Naive,
    Minimized,
    Reduced,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Prime ideals and Krull dimension.
    Spec { monoid: PathBuf },
    /// Primary decomposition of an ideal, given by generators.
    Primary {
        monoid: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
    },
    /// Associated primes, from the decomposition and from ideal quotients.
    Assprimes {
        monoid: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
    },
    /// Maps between two A-sets.
    Hom {
        x: PathBuf,
        y: PathBuf,
        #[command(flatten)]
        cap: Cap,
    },
    /// Tensor product of two A-sets.
    Tensor { x: PathBuf, y: PathBuf },
    /// Section, retraction and wedge tests for an exact sequence.
    Splitcheck { aes: PathBuf },
    /// Grothendieck group of projectives.
    K0 { monoid: PathBuf },
    /// K1 from the unit group, optionally against Aut of a wedge of n copies.
    K1 {
        monoid: PathBuf,
        #[arg(long)]
        aut: Option<usize>,
    },
    /// Grothendieck group of a finite universe of A-sets.
    G0 {
        monoid: PathBuf,
        /// Largest carrier in the universe.
        #[arg(long, default_value_t = 3)]
        size: usize,
    },
    /// Filtration by powers of a nilpotent ideal.
    Devissage {
        monoid: PathBuf,
        #[arg(long)]
        ideal: String,
        /// A-sets to check; all A-sets up to --size when omitted.
        #[arg(long)]
        aset: Vec<PathBuf>,
        #[arg(long, default_value_t = 3)]
        size: usize,
    },
    /// Homology of a double-arrow complex.
    Homology {
        complex: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
    /// Projective resolution of an A-set.
    Resolve {
        aset: PathBuf,
        #[arg(long, default_value_t = 3)]
        length: usize,
        #[arg(long, value_enum, default_value_t = FlavorArg::Minimized)]
        flavor: FlavorArg,
    },
    /// Normalized Moore complex of a simplicial A-set.
    Moore { simplicial: PathBuf },
    /// Inverse Dold-Kan construction, truncated.
    Dk {
        complex: PathBuf,
        #[arg(long, default_value_t = 2)]
        trunc: usize,
    },
    /// Hom(KC, S) against Hom(C, NS).
    Adjcheck {
        complex: PathBuf,
        simplicial: PathBuf,
        #[command(flatten)]
        cap: Cap,
    },
    /// Tor_1 over F1[t] against a power of t.
    Tor1 {
        aset: PathBuf,
        #[arg(long, default_value = "t")]
        elem: String,
        /// Truncation used for the realized complex.
        #[arg(long, default_value_t = 4)]
        top: usize,
    },
    /// Integer homology of a realized simplicial A-set.
    Chainhom {
        simplicial: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Extensions 0 -> sub -> E -> quot -> 0.
    Ext {
        monoid: PathBuf,
        #[arg(long)]
        quot: PathBuf,
        #[arg(long)]
        sub: PathBuf,
        #[command(flatten)]
        cap: Cap,
    },
    /// Commutative square-zero extensions of a monoid by an A-set.
    Sqz {
        monoid: PathBuf,
        #[arg(long)]
        aset: PathBuf,
        #[command(flatten)]
        cap: Cap,
    },
    /// Weil divisor class group.
    Cl { scheme: PathBuf },
    /// Picard group.
    Pic { scheme: PathBuf },
    /// Normalization of an affine monoid, or of its quotient by a monomial ideal.
    Normalize { monoid: PathBuf },
    /// Parse and validate a document.
    Validate { doc: PathBuf },
    /// Run every document in a directory against its expectation sidecar.
    Corpus { dir: PathBuf },
}

/// Result of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub exit: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, exit: 0 }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse arguments (program name first) and run.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let exit = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            return if exit == 0 { Outcome { exit, stdout: text, stderr: String::new() } } else { Outcome { exit, stdout: String::new(), stderr: text } };
        }
    };
    let bounds = bounds_for(&cli);
    match execute(&cli.command, bounds) {
        Ok(r) => Outcome { exit: r.exit, stdout: r.render(cli.json), stderr: String::new() },
        Err(e) => {
            let stdout = if cli.json { format!("{}\n", json!({"error": error_kind(&e), "message": e.to_string()})) } else { String::new() };
            Outcome { exit: e.exit_code(), stdout, stderr: format!("error: {e}\n") }
        }
    }
}

fn bounds_for(cli: &Cli) -> Bounds {
    let env = std::env::var("MONOIDKIT_BOUND").ok().and_then(|s| s.trim().parse::<usize>().ok());
    Bounds { carrier: cli.bound.or(env).unwrap_or(DEFAULT_CARRIER_BOUND), degree: cli.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND) }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::BoundExceeded(_) => "BoundExceeded",
        Error::BadWord(_) => "BadWord",
        Error::UnsupportedBackend(_) => "UnsupportedBackend",
        Error::NotAnIdeal(_) => "NotAnIdeal",
        Error::NotACongruence(_) => "NotACongruence",
        Error::ZeroInS => "ZeroInS",
        Error::ZeroNotPrime => "ZeroNotPrime",
        Error::ImproperIdeal => "ImproperIdeal",
        Error::NotASubset(_) => "NotASubset",
        Error::NotAES(_) => "NotAES",
        Error::NotProjective(_) => "NotProjective",
        Error::NotNilpotent(_) => "NotNilpotent",
        Error::CapExceeded(_) => "CapExceeded",
        Error::NotReduced(_) => "NotReduced",
        Error::TruncationTooLow { .. } => "TruncationTooLow",
        Error::HypothesisViolated(_) => "HypothesisViolated",
        Error::NotAComplex(_) => "NotAComplex",
        Error::NotNormal(_) => "NotNormal",
        Error::Invalid(_) => "Invalid",
        Error::Parse(_) => "Parse",
        Error::MissingExpectation(_) => "MissingExpectation",
    }
}

fn load(ws: &mut Workspace, p: &Path) -> Result<Object> {
    ws.load_path(&absolute(p))
}

fn load_monoid(ws: &mut Workspace, p: &Path) -> Result<MonoidValue> {
    match load(ws, p)? {
        Object::Monoid(m) => Ok(m),
        o => Err(Error::Invalid(format!("{} is a {} document, not a monoid", p.display(), o.kind()))),
    }
}

fn load_finite(ws: &mut Workspace, p: &Path) -> Result<Arc<FiniteMonoid>> {
    match load_monoid(ws, p)? {
        MonoidValue::Finite(m) => Ok(m),
        m => Err(Error::UnsupportedBackend(format!("{} is not a finite monoid", m.name()))),
    }
}

fn load_aset(ws: &mut Workspace, p: &Path) -> Result<ASet> {
    match load(ws, p)? {
        Object::ASet(x) => Ok(x),
        o => Err(Error::Invalid(format!("{} is a {} document, not an A-set", p.display(), o.kind()))),
    }
}

fn load_complex(ws: &mut Workspace, p: &Path) -> Result<DaComplex> {
    match load(ws, p)? {
        Object::Complex(c) => Ok(c),
        o => Err(Error::Invalid(format!("{} is a {} document, not a complex", p.display(), o.kind()))),
    }
}

fn load_simplicial(ws: &mut Workspace, p: &Path) -> Result<TruncSimplicialASet> {
    match load(ws, p)? {
        Object::Simplicial(s) => Ok(s),
        o => Err(Error::Invalid(format!("{} is a {} document, not a simplicial A-set", p.display(), o.kind()))),
    }
}

fn load_scheme(ws: &mut Workspace, p: &Path) -> Result<crate::geometry::scheme::GluedScheme> {
    match load(ws, p)? {
        Object::Scheme(s) => Ok(s),
        o => Err(Error::Invalid(format!("{} is a {} document, not a scheme", p.display(), o.kind()))),
    }
}

fn map_names(x: &ASet, y: &ASet, f: &[usize]) -> Vec<String> {
    (0..x.len()).map(|e| format!("{}->{}", x.names[e], y.names[f[e]])).collect()
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

/// `t^k`, `t` or `1`.
pub fn parse_power(s: &str) -> Result<usize> {
    let s = s.trim();
    match s {
        "1" => Ok(0),
        "t" => Ok(1),
        _ => s.strip_prefix("t^").and_then(|k| k.parse().ok()).ok_or_else(|| Error::BadWord(format!("{s} is not a power of t"))),
    }
}

pub fn execute(cmd: &Command, bounds: Bounds) -> Result<Report> {
    let mut ws = Workspace::new(bounds);
    let ws = &mut ws;
    match cmd {
        Command::Spec { monoid } => spec(load_monoid(ws, monoid)?),
        Command::Primary { monoid, ideal } => {
            let m = load_finite(ws, monoid)?;
            let i = parse_ideal(&m, ideal)?;
            let comps = primary_decomposition(&m, &i)?;
            let labels: Vec<String> = comps.iter().map(|c| ideal_label(&m, c)).collect();
            let radicals: Vec<String> = comps.iter().map(|c| ideal_label(&m, &radical(&m, c))).collect();
            let mut text = format!("{} = ", ideal_label(&m, &i));
            text.push_str(&labels.join(" ∩ "));
            text.push('\n');
            for (c, r) in labels.iter().zip(&radicals) {
                let _ = writeln!(text, "  {c}  radical {r}");
            }
            Ok(Report::ok(text, json!({"ideal": ideal_label(&m, &i), "components": labels, "radicals": radicals})))
        }
        Command::Assprimes { monoid, ideal } => {
            let m = load_finite(ws, monoid)?;
            let i = parse_ideal(&m, ideal)?;
            let ap = associated_primes(&m, &i)?;
            let a: Vec<String> = ap.from_decomposition.iter().map(|p| ideal_label(&m, p)).collect();
            let b: Vec<String> = ap.from_quotients.iter().map(|p| ideal_label(&m, p)).collect();
            let text = format!("from decomposition: {}\nfrom quotients:     {}\nagree: {}\n", a.join(" "), b.join(" "), ap.agree());
            Ok(Report::ok(text, json!({"ideal": ideal_label(&m, &i), "from_decomposition": a, "from_quotients": b, "agree": ap.agree()})))
        }
        Command::Hom { x, y, cap } => {
            let x = load_aset(ws, x)?;
            let y = load_aset(ws, y)?;
            let h = hom_enumerate(&x, &y, cap.cap)?;
            let maps: Vec<Vec<String>> = h.maps.iter().map(|f| map_names(&x, &y, f)).collect();
            let mut text = format!("|Hom({}, {})| = {}\n", x.name, y.name, maps.len());
            for m in &maps {
                let _ = writeln!(text, "  {}", m.join(" "));
            }
            Ok(Report::ok(text, json!({"count": maps.len(), "maps": maps})))
        }
        Command::Tensor { x, y } => {
            let x = load_aset(ws, x)?;
            let y = load_aset(ws, y)?;
            if x.base != y.base {
                return Err(Error::Invalid("A-sets over different monoids".into()));
            }
            let t = x.tensor(&y);
            let text = format!("{} ⊗ {} has {} points: {}\n", x.name, y.name, t.len(), t.names.join(" "));
            Ok(Report::ok(text, to_json(&aset_document(&t))))
        }
        Command::Splitcheck { aes } => {
            let seq = match load(ws, aes)? {
                Object::Aes(s) => s,
                o => return Err(Error::Invalid(format!("{} is a {} document, not a sequence", aes.display(), o.kind()))),
            };
            let r = split_check(&seq)?;
            let section = r.section.as_ref().map(|s| map_names(&seq.z, &seq.y, s));
            let retraction = r.retraction.as_ref().map(|s| map_names(&seq.y, &seq.x, s));
            let text = format!(
                "section: {}\nretraction: {}\nmiddle is a wedge: {}\nadmissibly projective: {}\n",
                section.as_ref().map_or("none".to_string(), |s| s.join(" ")),
                retraction.as_ref().map_or("none".to_string(), |s| s.join(" ")),
                r.middle_is_wedge,
                r.admissibly_projective.map_or("undecided".to_string(), |b| b.to_string()),
            );
            Ok(Report::ok(
                text,
                json!({"splits": r.splits(), "section": section, "retraction": retraction, "middle_is_wedge": r.middle_is_wedge, "consistent": r.consistent, "admissibly_projective": r.admissibly_projective}),
            ))
        }
        Command::K0 { monoid } => {
            let m = load_finite(ws, monoid)?;
            let k = k0(&m);
            let mut text = format!("K0 = {}\nbasis: {}\n", k.group, k.basis.join(" "));
            for (i, row) in k.table.iter().enumerate() {
                let _ = writeln!(text, "  {} * - : {}", k.basis[i], row.iter().map(|&j| k.basis[j].as_str()).collect::<Vec<_>>().join(" "));
            }
            Ok(Report::ok(text, to_json(&k)))
        }
        Command::K1 { monoid, aut } => {
            let m = load_finite(ws, monoid)?;
            let g = k1(&m);
            let mut text = format!("K1 = {g}\n");
            let mut j = json!({"k1": g});
            if let Some(n) = aut {
                let a = aut_wedge_abelianization(&m, *n)?;
                let _ = writeln!(text, "Aut(∨^{n} A)^ab = {a}");
                j["aut_abelianization"] = to_json(&a);
                j["n"] = json!(n);
            }
            Ok(Report::ok(text, j))
        }
        Command::G0 { monoid, size } => {
            let m = load_finite(ws, monoid)?;
            let uni = universe_up_to(&m, *size)?;
            let g = g0(&uni, *size)?;
            let text = format!("G0 = {}\nuniverse: {} A-sets, {} relations, hash {}\n", g.group, g.classes.len(), g.relations.len(), g.universe_hash);
            Ok(Report::ok(text, json!({"group": g.group, "classes": g.classes.len(), "relations": g.relations.len(), "universe_hash": g.universe_hash})))
        }
        Command::Devissage { monoid, ideal, aset, size } => {
            let m = load_finite(ws, monoid)?;
            let i = parse_ideal(&m, ideal)?;
            let xs = if aset.is_empty() { enumerate_asets(&m, *size)? } else { aset.iter().map(|p| load_aset(ws, p)).collect::<Result<Vec<_>>>()? };
            let mut rows = Vec::new();
            let mut text = String::new();
            let mut all = true;
            for x in &xs {
                let r = devissage_check(x, &i, &[])?;
                all &= r.identity_holds && r.layers_over_quotient;
                let _ = writeln!(text, "{} |X|={} filtration {:?} holds {}", x.name, x.len(), r.filtration, r.identity_holds);
                rows.push(json!({"aset": x.name, "size": x.len(), "report": r}));
            }
            let _ = writeln!(text, "all hold: {all}");
            Ok(Report::ok(text, json!({"ideal": ideal_label(&m, &i), "checked": xs.len(), "all_hold": all, "results": rows})))
        }
        Command::Homology { complex, degree } => {
            let c = load_complex(ws, complex)?;
            let degrees: Vec<i64> = match degree {
                Some(n) => vec![*n],
                None => (c.low..=c.high()).collect(),
            };
            let mut text = String::new();
            let mut out = Vec::new();
            for n in degrees {
                let h = c.homology(n);
                let _ = writeln!(text, "H{n}: {} points {}", h.aset.len(), h.aset.names.join(" "));
                out.push(json!({"degree": n, "size": h.aset.len(), "aset": aset_document(&h.aset)}));
            }
            Ok(Report::ok(text, json!({"homology": out})))
        }
        Command::Resolve { aset, length, flavor } => {
            let x = load_aset(ws, aset)?;
            if let Base::Monogenic = x.base {
                let r = resolve_monogenic(&x)?;
                let ok = verify_monogenic(&x, &r);
                let mut text = r.describe().join("\n");
                let _ = writeln!(text, "\nverified: {ok}");
                return Ok(Report::ok(text, json!({"resolution": r, "lines": r.describe(), "verified": ok})));
            }
            let fl = match flavor {
                FlavorArg::Naive => Flavor::Naive,
                FlavorArg::Minimized => Flavor::Minimized,
                FlavorArg::Reduced => Flavor::Reduced,
            };
            let res = resolve(&x, fl, ResolveOpts { length: *length, ..ResolveOpts::default() })?;
            let sizes: Vec<usize> = res.complex.levels.iter().map(|l| l.len()).collect();
            let exact = res.complex.exact_in(res.checked_degrees());
            let h0 = is_isomorphic(&res.complex.homology(0).aset, &x);
            let text = format!("levels: {sizes:?}\ncomplete: {}\nexact in {:?}: {exact}\nH0 ≅ X: {h0}\n", res.complete, res.checked_degrees());
            Ok(Report::ok(
                text,
                json!({"sizes": sizes, "complete": res.complete, "exact": exact, "checked_through": *res.checked_degrees().end(), "h0_iso": h0, "complex": complex_document(&res.complex)}),
            ))
        }
        Command::Moore { simplicial } => {
            let s = load_simplicial(ws, simplicial)?;
            let n = moore(&s);
            let sizes: Vec<usize> = n.complex.levels.iter().map(|l| l.len()).collect();
            let reduced = n.complex.is_reduced();
            let text = format!("N sizes: {sizes:?}\nreduced: {reduced}\n");
            Ok(Report::ok(text, json!({"sizes": sizes, "reduced": reduced, "complex": complex_document(&n.complex)})))
        }
        Command::Dk { complex, trunc } => {
            let c = load_complex(ws, complex)?;
            let k = dold_kan_k(&c, *trunc)?;
            let sizes: Vec<usize> = k.simplicial.levels.iter().map(|l| l.len()).collect();
            let text = format!("K sizes: {sizes:?}\n");
            Ok(Report::ok(text, json!({"sizes": sizes, "simplicial": simplicial_document(&k.simplicial)})))
        }
        Command::Adjcheck { complex, simplicial, cap } => {
            let c = load_complex(ws, complex)?;
            let s = load_simplicial(ws, simplicial)?;
            let r = adjunction_check(&c, &s, cap.cap)?;
            let text = format!("|Hom(KC,S)| = {}\n|Hom(C,NS)| = {}\nmutually inverse: {}\n", r.simplicial_maps, r.complex_maps, r.holds());
            let mut j = to_json(&r);
            j["holds"] = json!(r.holds());
            Ok(Report::ok(text, j))
        }
        Command::Tor1 { aset, elem, top } => {
            let x = load_aset(ws, aset)?;
            let k = parse_power(elem)?;
            let r = hurewicz_compare(&x, k, *top)?;
            let text = format!(
                "Tor1 rank (formula) = {}\ngraph cycle rank = {}\nH1 of realization = {}\nH0 = {}\nagree: {}\n",
                r.tor1.formula_rank, r.tor1.graph_rank, r.h1, r.h0, r.agree
            );
            Ok(Report::ok(text, to_json(&r)))
        }
        Command::Chainhom { simplicial, degree } => {
            let s = load_simplicial(ws, simplicial)?;
            let c = chain_of_simplicial(&s)?;
            let degrees: Vec<usize> = match degree {
                Some(n) => vec![*n],
                None => (0..c.top()).collect(),
            };
            let mut text = String::new();
            let mut out = Vec::new();
            for n in degrees {
                let h = smith_homology(&c, n)?;
                let _ = writeln!(text, "H{n} = {h}");
                out.push(json!({"degree": n, "group": h, "differential": c.d[n]}));
            }
            Ok(Report::ok(text, json!({"homology": out})))
        }
        Command::Ext { monoid, quot, sub, cap } => {
            load_finite(ws, monoid)?;
            let x = load_aset(ws, quot)?;
            let y = load_aset(ws, sub)?;
            let exts = ext_enumerate(&x, &y, cap.cap)?;
            let rt = ext_roundtrip(&x, &y, cap.cap)?;
            let mut text = format!("{} extensions of {} by {}\n", exts.len(), x.name, y.name);
            for e in &exts {
                let acts: Vec<String> = x.base.gen_names().iter().zip(&e.e.gen_act).map(|(g, m)| format!("{g}: {}", m.iter().map(|&v| e.e.names[v].as_str()).collect::<Vec<_>>().join(" "))).collect();
                let _ = writeln!(text, "  {}", acts.join(" | "));
            }
            let _ = writeln!(text, "brute force: {}  round trips: {}", rt.extensions, rt.phi_xi && rt.xi_phi && rt.valid);
            let docs: Vec<Value> = exts.iter().map(|e| to_json(&aset_document(&e.e))).collect();
            Ok(Report::ok(
                text,
                json!({"count": exts.len(), "bruteforce": rt.extensions, "phi_xi": rt.phi_xi, "xi_phi": rt.xi_phi, "valid": rt.valid, "extensions": docs}),
            ))
        }
        Command::Sqz { monoid, aset, cap } => {
            load_finite(ws, monoid)?;
            let x = load_aset(ws, aset)?;
            let r = sqz_enumerate(&x, cap.cap)?;
            let mut monoids = Vec::new();
            let mut text = format!("{} candidates, {} extensions, {} commutative\n", r.candidates, r.extensions, r.commutative);
            for f in &r.cocycles {
                if let Ok(e) = sqz_monoid(&x, f) {
                    let _ = writeln!(text, "  f = {f:?}: {} elements", e.len());
                    monoids.push(to_json(&monoid_document(&e)));
                }
            }
            Ok(Report::ok(
                text,
                json!({"candidates": r.candidates, "extensions": r.extensions, "commutative": r.commutative, "agree": r.agree, "symmetric_iff_commutative": r.symmetric_iff_commutative, "all_in_c2": r.all_in_c2, "roundtrip": r.roundtrip, "cocycles": r.cocycles, "monoids": monoids}),
            ))
        }
        Command::Cl { scheme } => {
            let s = load_scheme(ws, scheme)?;
            let cl = s.class_group()?;
            let pts: Vec<String> = s.height_one_points().iter().map(|p| p.label.clone()).collect();
            Ok(Report::ok(format!("{cl}\n"), json!({"cl": cl, "points": pts})))
        }
        Command::Pic { scheme } => {
            let s = load_scheme(ws, scheme)?;
            let p = s.pic()?;
            Ok(Report::ok(format!("{}\n", p.pic), json!({"pic": p.pic, "cocycles": p.cocycles})))
        }
        Command::Normalize { monoid } => {
            let a = match load_monoid(ws, monoid)? {
                MonoidValue::Affine(a) => a,
                m => return Err(Error::UnsupportedBackend(format!("normalization needs an affine monoid, got {}", m.name()))),
            };
            normalize(&a)
        }
        Command::Validate { doc } => {
            let o = load(ws, doc)?;
            let (name, size) = match &o {
                Object::Monoid(m) => (m.name(), m.as_finite().map(|f| f.len())),
                Object::ASet(x) => (x.name.clone(), Some(x.len())),
                Object::Aes(s) => (s.y.name.clone(), Some(s.y.len())),
                Object::Complex(c) => (c.base.name(), Some(c.levels.len())),
                Object::Simplicial(s) => (s.base.name(), Some(s.levels.len())),
                Object::Scheme(s) => (s.name.clone(), Some(s.charts.len())),
            };
            Ok(Report::ok(format!("ok: {} {name}\n", o.kind()), json!({"valid": true, "kind": o.kind(), "name": name, "size": size})))
        }
        Command::Corpus { dir } => corpus_run(dir, bounds),
    }
}

fn spec(m: MonoidValue) -> Result<Report> {
    match m {
        MonoidValue::Finite(m) => {
            let ps = mspec(&m);
            let labels: Vec<String> = ps.iter().map(|p| p.label(&m)).collect();
            let d = dimension(&m);
            let text = format!("{}\ndimension {d}\n", labels.join("\n"));
            let ranks = if m.len() <= 64 { rank_vector(&ASet::regular(m.clone())).ok().map(|v| v.into_iter().map(|(_, r)| r).collect::<Vec<_>>()) } else { None };
            Ok(Report::ok(text, json!({"monoid": m.name, "primes": labels, "dimension": d, "regular_rank": ranks})))
        }
        MonoidValue::Monogenic => Ok(Report::ok("(0)\n(t)\ndimension 1\n".into(), json!({"monoid": "F1[t]", "primes": ["(0)", "(t)"], "dimension": 1}))),
        MonoidValue::Affine(a) => {
            let ideal = a.monomial_ideal.clone().unwrap_or_default();
            let coords: Vec<Vec<i64>> = ideal.iter().filter_map(|i| a.coords(i)).collect();
            let mut primes = Vec::new();
            let mut d = 0;
            for f in a.faces() {
                if !coords.iter().all(|c| f.facets.iter().any(|&fi| a.facet_value(fi, c) > 0)) {
                    continue;
                }
                let outside: Vec<String> = (0..a.generators.len()).filter(|g| !f.generators.contains(g)).map(|g| format!("{:?}", a.generators[g])).collect();
                let gens: Vec<Vec<i64>> = f.generators.iter().map(|&g| a.generators[g].clone()).collect();
                d = d.max(lattice_rank(&gens, a.rank));
                primes.push(if outside.is_empty() { "(0)".to_string() } else { format!("({})", outside.join(",")) });
            }
            primes.sort();
            primes.dedup();
            let text = format!("{}\ndimension {d}\n", primes.join("\n"));
            Ok(Report::ok(text, json!({"monoid": a.name, "primes": primes, "dimension": d})))
        }
    }
}

fn normalize(a: &AffineMonoid) -> Result<Report> {
    if a.monomial_ideal.is_some() {
        let comps = a.normalize_pc()?;
        let mut text = format!("{} components\n", comps.len());
        let mut out = Vec::new();
        for (f, basis) in &comps {
            let _ = writeln!(text, "  face {:?}: {basis:?}", f.generators);
            out.push(json!({"face": f.generators, "basis": basis, "free": lattice_rank(basis, a.rank) == basis.len()}));
        }
        return Ok(Report::ok(text, json!({"components": out})));
    }
    let n = a.normalize_affine()?;
    let normal = a.is_normal()?;
    let text = format!("normal: {normal}\nbasis: {:?}\n", n.generators);
    Ok(Report::ok(text, json!({"normal": normal, "basis": n.generators})))
}

/// One expected run of the command line against a corpus document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub command: String,
    /// Further arguments; `*.json` arguments resolve against the corpus directory.
    #[serde(default)]
    pub args: Vec<String>,
    #[serde(default)]
    pub exit: i32,
    /// Expected `--json` output; omitted to check only the exit code.
    #[serde(default)]
    pub json: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub document: String,
    pub command: String,
    pub pass: bool,
    pub detail: String,
}

fn sidecar_of(doc: &Path) -> PathBuf {
    let stem = doc.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    doc.with_file_name(format!("{stem}.expect.json"))
}

fn read_expectations(path: &Path) -> Result<Vec<Expectation>> {
    let text = std::fs::read_to_string(path).map_err(|_| Error::MissingExpectation(path.display().to_string()))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::MissingExpectation(format!("{}: {e}", path.display())))?;
    let items = match v {
        Value::Array(a) => a,
        o => vec![o],
    };
    items.into_iter().map(|i| serde_json::from_value(i).map_err(|e| Error::MissingExpectation(format!("{}: {e}", path.display())))).collect()
}

/// Run every `*.json` document in `dir` through its `*.expect.json` sidecar.
pub fn corpus_cases(dir: &Path, bounds: Bounds) -> Result<Vec<CaseResult>> {
    let dir = absolute(dir);
    let mut docs: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json") && !p.to_string_lossy().ends_with(".expect.json"))
        .collect();
    docs.sort();
    let mut out = Vec::new();
    for doc in docs {
        let exps = read_expectations(&sidecar_of(&doc))?;
        let name = doc.file_name().unwrap().to_string_lossy().into_owned();
        for e in exps {
            let mut argv = vec!["monoidkit".to_string(), "--json".into(), "--bound".into(), bounds.carrier.to_string(), e.command.clone(), doc.display().to_string()];
            argv.extend(e.args.iter().map(|a| if a.ends_with(".json") { dir.join(a).display().to_string() } else { a.clone() }));
            let got = run(&argv);
            let mut detail = String::new();
            if got.exit != e.exit {
                detail = format!("exit {} (expected {})", got.exit, e.exit);
            } else if let Some(want) = &e.json {
                match serde_json::from_str::<Value>(&got.stdout) {
                    Ok(v) if subsumes(&v, want) => {}
                    Ok(v) => detail = format!("output {v} does not match"),
                    Err(err) => detail = format!("unparsable output: {err}"),
                }
            }
            out.push(CaseResult { document: name.clone(), command: e.command.clone(), pass: detail.is_empty(), detail });
        }
    }
    Ok(out)
}

/// Every key of `want` is present in `got` with a matching value; arrays must match exactly in length.
pub fn subsumes(got: &Value, want: &Value) -> bool {
    match (got, want) {
        (Value::Object(g), Value::Object(w)) => w.iter().all(|(k, wv)| g.get(k).is_some_and(|gv| subsumes(gv, wv))),
        (Value::Array(g), Value::Array(w)) => g.len() == w.len() && g.iter().zip(w).all(|(a, b)| subsumes(a, b)),
        _ => got == want,
    }
}

fn corpus_run(dir: &Path, bounds: Bounds) -> Result<Report> {
    let cases = corpus_cases(dir, bounds)?;
    let passed = cases.iter().filter(|c| c.pass).count();
    let mut text = String::new();
    for c in &cases {
        let _ = writeln!(text, "{} {:<28} {}{}", if c.pass { "PASS" } else { "FAIL" }, c.document, c.command, if c.pass { String::new() } else { format!("  {}", c.detail) });
    }
    let _ = writeln!(text, "{passed}/{} passed", cases.len());
    let exit = if passed == cases.len() { 0 } else { 2 };
    Ok(Report { text, json: json!({"passed": passed, "total": cases.len(), "cases": cases}), exit })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers() {
        assert_eq!(parse_power("t^3").unwrap(), 3);
        assert_eq!(parse_power("t").unwrap(), 1);
        assert_eq!(parse_power("1").unwrap(), 0);
        assert!(parse_power("x^2").is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["monoidkit", "frobnicate"]).exit, 1);
        assert_eq!(run(["monoidkit"]).exit, 1);
        assert_eq!(run(["monoidkit", "--help"]).exit, 0);
    }

    #[test]
    fn subsumption() {
        let got = json!({"a": [1, 2], "b": {"c": 1, "d": 2}});
        assert!(subsumes(&got, &json!({"b": {"c": 1}})));
        assert!(!subsumes(&got, &json!({"a": [1]})));
        assert!(!subsumes(&got, &json!({"e": 1})));
    }
}
