//! Runs named checks over a bundle and assembles a deterministic report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::bundle::Bundle;
use crate::decomp::{
    degree_divisibility_checks, height, min_degree_check, morita_psp_search, rational_intersection_criterion, rational_symmetry_search,
    LatticeFacts, MinDegreeVerdict, DEFAULT_IDEAL_DIM,
};
use crate::error::{Error, Result};
use crate::forms::{
    dual_basis, gram_matrix, is_symmetrising, is_trace_form, psp_direct, psp_regular_gram, scalar_exponent, PspCertificate, SymmetricData,
};
use crate::lattice::{
    constant_value_check, knorr_check, knorr_exponent_equivalence, stable_exponent_check, stable_hom, verify_tate_duality, Limits,
};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Command {
    Validate,
    Symmetrising,
    Casimir,
    Psp,
    Tate,
    Knorr,
    StableExponent,
    ConstantValue,
    MoritaPsp,
    Rational,
    Heights,
    Divisibility,
    All,
}

impl Command {
    pub const EACH: [Command; 12] = [
        Command::Validate,
        Command::Symmetrising,
        Command::Casimir,
        Command::Psp,
        Command::Tate,
        Command::Knorr,
        Command::StableExponent,
        Command::ConstantValue,
        Command::MoritaPsp,
        Command::Rational,
        Command::Heights,
        Command::Divisibility,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Symmetrising => "symmetrising",
            Command::Casimir => "casimir",
            Command::Psp => "psp",
            Command::Tate => "tate",
            Command::Knorr => "knorr",
            Command::StableExponent => "stable-exponent",
            Command::ConstantValue => "constant-value",
            Command::MoritaPsp => "morita-psp",
            Command::Rational => "rational",
            Command::Heights => "heights",
            Command::Divisibility => "divisibility",
            Command::All => "all",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::EACH
            .into_iter()
            .chain([Command::All])
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Resolution(format!("unknown check {s}")))
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Form used by the form-dependent checks; the bundle's first form if unset.
    pub form: Option<String>,
    /// Box bound for the Morita and rational searches.
    pub bound: i64,
    pub limits: Limits,
    /// Record elapsed time per entry. Off by default so reports are byte-stable.
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { form: None, bound: 5, limits: Limits::default(), timings: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ResourceBound,
    InputError,
}

impl Status {
    fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::InputError => 2,
            Status::ResourceBound => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub name: String,
    pub verdict: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Entry {
    fn new(name: impl Into<String>, verdict: impl Into<String>, details: Value) -> Entry {
        Entry { name: name.into(), verdict: verdict.into(), status: Status::Pass, expected: None, details, elapsed_ms: None }
    }

    fn failing(mut self) -> Entry {
        self.status = Status::Fail;
        self
    }

    fn error(name: impl Into<String>, e: &Error) -> Entry {
        let status = if e.is_resource_bound() { Status::ResourceBound } else { Status::InputError };
        let verdict = if e.is_resource_bound() { "resource-bound" } else { "error" };
        Entry { status, ..Entry::new(name, verdict, json!({ "error": e.to_string() })) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub bundle: String,
    pub prime: u64,
    pub command: String,
    pub entries: Vec<Entry>,
    pub notes: Vec<String>,
    pub exit_code: i32,
}

impl Report {
    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per entry.
    pub fn to_text(&self) -> String {
        let mut out = format!("bundle {} (p = {}), check {}\n", self.bundle, self.prime, self.command);
        for e in &self.entries {
            let mark = match e.status {
                Status::Pass => "ok",
                Status::Fail => "FAIL",
                Status::ResourceBound => "BOUND",
                Status::InputError => "ERROR",
            };
            out.push_str(&format!("{mark:>5}  {}: {}", e.name, e.verdict));
            if let Some(x) = &e.expected {
                out.push_str(&format!(" (expected {x})"));
            }
            if let Some(err) = e.details.get("error").and_then(Value::as_str) {
                out.push_str(&format!(" [{err}]"));
            }
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out.push_str(&format!("exit code {}\n", self.exit_code));
        out
    }
}

fn strs<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn certificate_json(c: &PspCertificate) -> Value {
    json!({ "n": c.n, "scalar": c.scalar, "witness": c.witness })
}

struct Runner<'a> {
    bundle: &'a Bundle,
    options: &'a Options,
    entries: Vec<Entry>,
}

impl<'a> Runner<'a> {
    fn push(&mut self, e: Entry) {
        self.entries.push(e);
    }

    fn timed(&mut self, f: impl FnOnce(&mut Self)) {
        let start = Instant::now();
        let before = self.entries.len();
        f(self);
        if self.options.timings {
            let ms = start.elapsed().as_millis();
            for e in &mut self.entries[before..] {
                e.elapsed_ms = Some(ms);
            }
        }
    }

    fn data(&self) -> Result<(String, SymmetricData)> {
        let (name, form) = self.bundle.form(self.options.form.as_deref())?;
        if !is_symmetrising(&self.bundle.order, form) {
            return Err(Error::FormNotSymmetrising);
        }
        Ok((name.clone(), SymmetricData::new(&self.bundle.order, form)?))
    }

    fn with_data(&mut self, name: &str, f: impl FnOnce(&mut Self, &SymmetricData)) {
        match self.data() {
            Ok((_, d)) => f(self, &d),
            Err(e) => self.push(Entry::error(name, &e)),
        }
    }

    fn validate(&mut self) {
        let b = self.bundle;
        self.push(Entry::new(
            "validate",
            "valid",
            json!({
                "dim": b.order.dim(),
                "forms": b.forms.iter().map(|(n, _)| n).collect::<Vec<_>>(),
                "lattices": b.lattices.iter().map(|(n, l)| json!({ "name": n, "rank": l.rank() })).collect::<Vec<_>>(),
                "characters": b.characters.as_ref().map(|t| t.names.clone()),
                "decomposition": b.decomposition.is_some(),
            }),
        ));
    }

    fn symmetrising(&mut self) {
        let a = &self.bundle.order;
        for (name, form) in &self.bundle.forms {
            let g = gram_matrix(a, form);
            let det = g.determinant();
            self.push(Entry::new(
                format!("symmetrising.{name}"),
                yes_no(is_symmetrising(a, form)),
                json!({
                    "trace_form": is_trace_form(a, form),
                    "gram_determinant": det,
                    "gram_determinant_valuation": det.val(a.prime()).to_string(),
                }),
            ));
        }
    }

    fn casimir(&mut self) {
        let a = &self.bundle.order;
        for (name, form) in &self.bundle.forms {
            let key = format!("casimir.{name}");
            if !is_symmetrising(a, form) {
                self.push(Entry::new(key, "not symmetrising", json!({})));
                continue;
            }
            let r = dual_basis(a, form).map(|dual| {
                let z = dual.casimir(a);
                let separable = a.invert(&z).is_ok();
                (dual, z, separable)
            });
            match r {
                Ok((dual, z, separable)) => {
                    let n = scalar_exponent(a, &z);
                    self.push(Entry::new(
                        key,
                        if separable { "separable" } else { "not separable" },
                        json!({
                            "dual_basis": dual.dual.iter().map(|e| &e.coords).collect::<Vec<_>>(),
                            "casimir": z.coords,
                            "scalar_exponent": n,
                        }),
                    ));
                }
                Err(e) => self.push(Entry::error(key, &e)),
            }
        }
    }

    fn psp(&mut self) {
        let a = &self.bundle.order;
        let direct = match self.bundle.form(self.options.form.as_deref()) {
            Ok((_, form)) if is_symmetrising(a, form) => match psp_direct(a, form) {
                Ok(c) => {
                    let details = c.as_ref().map_or(json!({}), certificate_json);
                    self.push(Entry::new("psp.direct", yes_no(c.is_some()), details));
                    Some(c.is_some())
                }
                Err(e) => {
                    self.push(Entry::error("psp.direct", &e));
                    None
                }
            },
            Ok(_) => {
                self.push(Entry::new("psp.direct", "not applicable", json!({ "reason": "form is not symmetrising" })));
                None
            }
            Err(e) => {
                self.push(Entry::error("psp.direct", &e));
                None
            }
        };
        let gram = match psp_regular_gram(a) {
            Ok(r) => {
                let mut details = json!({ "exponents": r.exponents });
                if let Some(c) = &r.certificate {
                    details["certificate"] = certificate_json(c);
                }
                self.push(Entry::new("psp.regular-gram", yes_no(r.certificate.is_some()), details));
                Some(r.certificate.is_some())
            }
            Err(e @ (Error::RegularGramSingular | Error::Precondition(_))) => {
                self.push(Entry::new("psp.regular-gram", "not applicable", json!({ "reason": e.to_string() })));
                None
            }
            Err(e) => {
                self.push(Entry::error("psp.regular-gram", &e));
                None
            }
        };
        let verdicts: Vec<bool> = [direct, gram].into_iter().flatten().collect();
        match verdicts.as_slice() {
            [] => self.push(Entry::new("psp", "undecided", json!({}))),
            [v, rest @ ..] if rest.iter().all(|x| x == v) => {
                self.push(Entry::new("psp", yes_no(*v), json!({ "algorithms": verdicts.len() })))
            }
            _ => self.push(Entry::new("psp", "disagree", json!({ "direct": direct, "regular_gram": gram })).failing()),
        }
    }

    fn tate(&mut self) {
        self.with_data("tate", |r, data| {
            let lattices = &r.bundle.lattices;
            for (i, (nu, u)) in lattices.iter().enumerate() {
                for (nv, v) in &lattices[i..] {
                    let key = format!("tate.{nu}.{nv}");
                    match verify_tate_duality(&r.bundle.order, data, u, v) {
                        Ok(t) => r.push(Entry::new(
                            key,
                            "perfect",
                            json!({
                                "exponents_uv": t.exponents_uv,
                                "exponents_vu": t.exponents_vu,
                                "values": t.values.iter().map(|row| strs(row)).collect::<Vec<_>>(),
                            }),
                        )),
                        Err(Error::PairingDegenerate(w)) => {
                            r.push(Entry::new(key, "degenerate", json!({ "witness": w })).failing())
                        }
                        Err(e) => r.push(Entry::error(key, &e)),
                    }
                }
            }
        });
    }

    fn knorr(&mut self) {
        let lim = self.options.limits;
        for (name, u) in &self.bundle.lattices {
            let key = format!("knorr.{name}");
            match knorr_check(&self.bundle.order, u, &lim) {
                Ok(k) => self.push(Entry::new(
                    key,
                    yes_no(k.is_knorr),
                    json!({
                        "rank_valuation": k.rank_valuation,
                        "trace_valuations": strs(&k.trace_valuations),
                        "split_local": k.split_local,
                        "reason": k.reason,
                    }),
                )),
                Err(e) => self.push(Entry::error(key, &e)),
            }
        }
    }

    fn stable_exponent(&mut self) {
        self.with_data("stable-exponent", |r, data| {
            let a = &r.bundle.order;
            let lim = r.options.limits;
            for (name, u) in &r.bundle.lattices {
                let key = format!("stable-exponent.{name}");
                let report = stable_exponent_check(a, data, u, &lim).and_then(|se| Ok((se, knorr_exponent_equivalence(a, data, u, &lim)?)));
                match report {
                    Ok((se, eq)) => {
                        let socle = match &se.socle {
                            crate::lattice::SocleOracle::Evaluated { holds, socle_size, expected_size } => {
                                json!({ "holds": holds, "socle_size": socle_size, "expected_size": expected_size })
                            }
                            crate::lattice::SocleOracle::Skipped(why) => json!({ "skipped": why }),
                        };
                        let entry = Entry::new(
                            key,
                            yes_no(se.criterion),
                            json!({
                                "exponent": se.exponent,
                                "stable_exponents": se.stable_exponents,
                                "identity_valuation": se.identity_valuation.to_string(),
                                "split_local": se.split_local,
                                "reason": se.reason,
                                "socle": socle,
                                "clauses": eq.clauses.iter().map(|c| json!({
                                    "name": c.name, "criterion": c.criterion, "structural": c.structural,
                                })).collect::<Vec<_>>(),
                            }),
                        );
                        r.push(if eq.consistent() { entry } else { entry.failing() });
                    }
                    Err(Error::Projective) => r.push(Entry::new(key, "projective", json!({}))),
                    Err(e) => r.push(Entry::error(key, &e)),
                }
            }
        });
    }

    fn constant_value(&mut self) {
        self.with_data("constant-value", |r, data| {
            for (name, u) in &r.bundle.lattices {
                let key = format!("constant-value.{name}");
                match constant_value_check(&r.bundle.order, data, u) {
                    Ok(c) => {
                        let e = Entry::new(
                            key,
                            if c.holds { "holds" } else { "fails" },
                            json!({ "exponent": c.exponent, "min_valuation": c.min_valuation.to_string() }),
                        );
                        r.push(if c.holds { e } else { e.failing() });
                    }
                    Err(e) => r.push(Entry::error(key, &e)),
                }
            }
        });
    }

    fn morita(&mut self) {
        let b = self.bundle;
        let (Some(t), Some(d)) = (&b.characters, &b.decomposition) else {
            self.push(Entry::new("morita-psp", "not applicable", json!({ "reason": "needs characters and a decomposition matrix" })));
            return;
        };
        let bound = self.options.bound;
        match morita_psp_search(&b.order, t, d, bound) {
            Some(w) => self.push(Entry::new("morita-psp", "yes", json!({ "m": w.m, "a": w.a, "n": w.n, "form": w.form }))),
            None => self.push(Entry::new("morita-psp", "none within bound", json!({ "bound": bound }))),
        }
    }

    fn rational(&mut self) {
        let b = self.bundle;
        let Some(t) = &b.characters else {
            self.push(Entry::new("rational", "not applicable", json!({ "reason": "needs characters" })));
            return;
        };
        let reference = match self.bundle.form(self.options.form.as_deref()) {
            Ok((_, f)) => f.clone(),
            Err(e) => return self.push(Entry::error("rational", &e)),
        };
        let report = match rational_symmetry_search(&b.order, t, &reference, self.options.bound) {
            Ok(r) => r,
            Err(e) => return self.push(Entry::error("rational", &e)),
        };
        let congruences: Vec<Value> = report
            .congruences
            .iter()
            .map(|c| {
                let mut v = json!({
                    "basis_index": c.basis_index,
                    "terms": c.terms.iter().map(|(i, x)| json!({ "character": t.names[*i], "coefficient": x })).collect::<Vec<_>>(),
                });
                if let Some((i, j, x)) = c.ratio {
                    v["ratio"] = json!({ "numerator": t.names[i], "denominator": t.names[j], "minus_ratio_residue": x });
                }
                v
            })
            .collect();
        self.push(Entry::new(
            "rational.search",
            if report.witness.is_some() { "found" } else { "none within bound" },
            json!({
                "witness": report.witness.as_ref().map(|w| json!({ "coefficients": w.coefficients, "sigma": w.sigma, "n": w.n, "form": w.form })),
                "schur_valuations": report.schur_valuations,
                "congruences": congruences,
                "satisfiable_in_prime_field": report.satisfiable_in_prime_field,
            }),
        ));
        let (Some(w), Some(d)) = (&report.witness, &b.decomposition) else {
            return;
        };
        match rational_intersection_criterion(&b.order, t, d, w, DEFAULT_IDEAL_DIM) {
            Ok(c) => self.push(Entry::new(
                "rational.criterion",
                yes_no(c.verdict),
                json!({ "sigma": c.sigma, "maximal_ideals": c.maximal_ideals, "proper": c.proper }),
            )),
            Err(e) => self.push(Entry::error("rational.criterion", &e)),
        }
    }

    fn heights(&mut self) {
        let b = self.bundle;
        let Some(t) = &b.characters else {
            self.push(Entry::new("heights", "not applicable", json!({ "reason": "needs characters" })));
            return;
        };
        let p = b.prime();
        for (name, u) in &b.lattices {
            let key = format!("height.{name}");
            match height(&Scalar::from(u.rank() as i64), &t.degrees, p) {
                Ok(h) => self.push(Entry::new(key, h.to_string(), json!({ "rank": u.rank() }))),
                Err(e) => self.push(Entry::error(key, &e)),
            }
        }
        for (name, deg) in t.names.iter().zip(&t.degrees) {
            let key = format!("height.{name}");
            match height(deg, &t.degrees, p) {
                Ok(h) => self.push(Entry::new(key, h.to_string(), json!({ "degree": deg }))),
                Err(e) => self.push(Entry::error(key, &e)),
            }
        }
    }

    fn divisibility(&mut self) {
        let b = self.bundle;
        let a = &b.order;
        let cert = self.bundle.form(self.options.form.as_deref()).and_then(|(_, f)| {
            if is_symmetrising(a, f) {
                psp_direct(a, f)
            } else {
                Err(Error::FormNotSymmetrising)
            }
        });
        let (n, data) = match cert.and_then(|c| c.map(|c| Ok((c.n, SymmetricData::new(a, &c.witness)?))).transpose()) {
            Ok(Some(x)) => x,
            Ok(None) => {
                return self.push(Entry::new("divisibility", "not applicable", json!({ "reason": "order lacks the projective scalar property" })))
            }
            Err(e) => return self.push(Entry::error("divisibility", &e)),
        };
        let lim = self.options.limits;
        let mut facts = Vec::new();
        for (name, u) in &b.lattices {
            let fact = knorr_check(a, u, &lim).and_then(|k| {
                let e = stable_hom(a, &data, u, u)?.exponent();
                Ok(LatticeFacts { name: name.clone(), rank: u.rank() as u64, knorr: k.is_knorr, projective: e == 0, exponent: e })
            });
            match fact {
                Ok(f) => facts.push(f),
                Err(e) => return self.push(Entry::error("divisibility", &e)),
            }
        }
        match degree_divisibility_checks(n, &facts, b.prime()) {
            Ok(r) => self.push(Entry::new(
                "divisibility",
                "holds",
                json!({ "n": n, "knorr": r.knorr, "projective": r.projective }),
            )),
            Err(Error::Violation(m)) => self.push(Entry::new("divisibility", "violated", json!({ "n": n, "violation": m })).failing()),
            Err(e) => self.push(Entry::error("divisibility", &e)),
        }
        if let Some(t) = &b.characters {
            let m = min_degree_check(&t.degrees, n, &facts, b.prime());
            let verdict = match m.verdict {
                MinDegreeVerdict::Found(i) => format!("found {}", t.names[i]),
                MinDegreeVerdict::Inconclusive => "inconclusive".into(),
            };
            self.push(Entry::new("min-degree", verdict, json!({ "a0": m.a0, "target_valuation": m.target })));
        }
    }

    fn run(&mut self, c: Command) {
        match c {
            Command::Validate => self.timed(Self::validate),
            Command::Symmetrising => self.timed(Self::symmetrising),
            Command::Casimir => self.timed(Self::casimir),
            Command::Psp => self.timed(Self::psp),
            Command::Tate => self.timed(Self::tate),
            Command::Knorr => self.timed(Self::knorr),
            Command::StableExponent => self.timed(Self::stable_exponent),
            Command::ConstantValue => self.timed(Self::constant_value),
            Command::MoritaPsp => self.timed(Self::morita),
            Command::Rational => self.timed(Self::rational),
            Command::Heights => self.timed(Self::heights),
            Command::Divisibility => self.timed(Self::divisibility),
            Command::All => Command::EACH.into_iter().for_each(|c| self.run(c)),
        }
    }
}

/// Runs `command` and compares every produced entry against the bundle's
/// expectations. Under `all`, expectations naming no produced entry fail.
pub fn run(command: Command, bundle: &Bundle, options: &Options) -> Report {
    let mut runner = Runner { bundle, options, entries: Vec::new() };
    runner.run(command);
    let mut entries = runner.entries;
    for e in &mut entries {
        if let Some(x) = bundle.expectations.get(&e.name) {
            if *x != e.verdict && e.status == Status::Pass {
                e.status = Status::Fail;
            }
            e.expected = Some(x.clone());
        }
    }
    if command == Command::All {
        for (k, x) in &bundle.expectations {
            if !entries.iter().any(|e| &e.name == k) {
                let mut e = Entry::new(k.clone(), "missing", json!({})).failing();
                e.expected = Some(x.clone());
                entries.push(e);
            }
        }
    }
    let exit_code = entries.iter().map(|e| e.status).max().map_or(0, Status::exit_code);
    Report {
        bundle: bundle.name.clone(),
        prime: bundle.prime().get(),
        command: command.to_string(),
        entries,
        notes: bundle.notes.clone(),
        exit_code,
    }
}
