//! Script execution: binds names, dispatches commands, and emits one
//! JSON object per command on standard output.
//!
//! Output is deterministic given the flags: every ideal prints as its
//! canonical reduced Gröbner basis modulo the defining ideal, sorted as
//! text, and all numbers are exact integers or `{"num","den"}`
//! rationals. Only the `timing_ms` field varies between runs.

use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value as Json};

use crate::cache::{self, CacheEntry, GbCache};
use crate::conditions::{self, ConditionReport, DiagnoseConfig, Verdict};
use crate::dsl::{Arg, SessionScript, Stmt};
use crate::error::{Error, Result};
use crate::field::{FrobeniusExponent, PrimeField};
use crate::groebner::{WorkBudget, DEFAULT_BUDGET};
use crate::ideal_ops;
use crate::invariants;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::quotient::{RIdeal, RingPresentation};

#[derive(Debug, Clone)]
pub struct RunnerConfig {
    pub order: MonomialOrder,
    pub seed: u64,
    pub budget_cap: u64,
    pub workspace: Option<PathBuf>,
    pub pretty: bool,
}

impl Default for RunnerConfig {
    fn default() -> Self {
        RunnerConfig {
            order: MonomialOrder::GrevLex,
            seed: 0,
            budget_cap: DEFAULT_BUDGET,
            workspace: None,
            pretty: false,
        }
    }
}

enum Value {
    Ring(Arc<RingPresentation>),
    Ideal(Arc<RingPresentation>, RIdeal),
    Poly(Arc<RingPresentation>, Polynomial),
}

struct Session<'a> {
    config: &'a RunnerConfig,
    env: HashMap<String, Value>,
    current: Option<Arc<RingPresentation>>,
    cache: Option<GbCache>,
    diagnostics: Vec<String>,
}

/// Executes a parsed script; returns the process exit code (0 on
/// success, 1 if any command errored).
pub fn run(
    script: &SessionScript,
    config: &RunnerConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let cache = match &config.workspace {
        Some(dir) => match GbCache::open(dir) {
            Ok(c) => Some(c),
            Err(e) => {
                writeln!(err, "warning: cannot open workspace cache: {}", e)?;
                None
            }
        },
        None => None,
    };
    let mut session = Session {
        config,
        env: HashMap::new(),
        current: None,
        cache,
        diagnostics: Vec::new(),
    };
    let mut failed = false;
    for stmt in &script.stmts {
        let started = Instant::now();
        let outcome = session.execute(stmt);
        for d in session.diagnostics.drain(..) {
            writeln!(err, "warning: {}", d)?;
        }
        let obj = match outcome {
            Ok(None) => continue,
            Ok(Some(mut obj)) => {
                let ms = started.elapsed().as_millis() as u64;
                obj.as_object_mut()
                    .expect("command output is an object")
                    .insert("timing_ms".to_string(), json!(ms));
                obj
            }
            Err(e) => {
                failed = true;
                json!({ "error": e.code(), "detail": e.to_string() })
            }
        };
        if config.pretty {
            writeln!(out, "{}", serde_json::to_string_pretty(&obj)?)?;
        } else {
            writeln!(out, "{}", serde_json::to_string(&obj)?)?;
        }
    }
    Ok(if failed { 1 } else { 0 })
}

impl Session<'_> {
    fn budget(&self) -> WorkBudget {
        WorkBudget::new(self.config.budget_cap)
    }

    fn execute(&mut self, stmt: &Stmt) -> Result<Option<Json>> {
        match stmt {
            Stmt::LetRing { name, ring } => {
                let field = PrimeField::new(ring.p)?;
                let vars: Vec<&str> = ring.vars.iter().map(|s| s.as_str()).collect();
                let r = RingPresentation::new(
                    field,
                    &vars,
                    ring.k_gens.clone(),
                    self.config.order.clone(),
                    &mut self.budget(),
                )?;
                let r = Arc::new(r);
                self.current = Some(r.clone());
                self.env.insert(name.clone(), Value::Ring(r));
                Ok(None)
            }
            Stmt::LetIdeal { name, gens } => {
                let ring = self.current_ring()?;
                let ideal = ring.ideal(gens.clone())?;
                self.env.insert(name.clone(), Value::Ideal(ring, ideal));
                Ok(None)
            }
            Stmt::LetPoly { name, poly } => {
                let ring = self.current_ring()?;
                if poly.nvars() != ring.nvars() {
                    return Err(Error::ArityMismatch);
                }
                self.env.insert(name.clone(), Value::Poly(ring, poly.clone()));
                Ok(None)
            }
            Stmt::Cmd { name, args } => self.command(name, args).map(Some),
        }
    }

    fn current_ring(&self) -> Result<Arc<RingPresentation>> {
        self.current
            .clone()
            .ok_or_else(|| Error::UnboundName("<ring>".to_string()))
    }

    fn resolve_ring(&self, args: &[Arg]) -> Result<Arc<RingPresentation>> {
        for a in args {
            if let Arg::Name(n) = a {
                match self.env.get(n) {
                    Some(Value::Ring(r)) => return Ok(r.clone()),
                    Some(_) => continue,
                    None => return Err(Error::UnboundName(n.clone())),
                }
            }
        }
        self.current_ring()
    }

    /// Positional (non-keyword, non-ring) arguments in order.
    fn positional<'s>(&self, args: &'s [Arg]) -> Result<Vec<&'s Arg>> {
        let mut out = Vec::new();
        for a in args {
            match a {
                Arg::Keyword { .. } => {}
                Arg::Name(n) => match self.env.get(n) {
                    Some(Value::Ring(_)) => {}
                    Some(_) => out.push(a),
                    None => return Err(Error::UnboundName(n.clone())),
                },
                _ => out.push(a),
            }
        }
        Ok(out)
    }

    fn keyword(&self, args: &[Arg], key: &str) -> Option<u64> {
        args.iter().find_map(|a| match a {
            Arg::Keyword { key: k, value } if k == key => Some(*value),
            _ => None,
        })
    }

    fn keyword_all(&self, args: &[Arg], key: &str) -> Vec<u64> {
        args.iter()
            .filter_map(|a| match a {
                Arg::Keyword { key: k, value } if k == key => Some(*value),
                _ => None,
            })
            .collect()
    }

    fn as_ideal(&self, ring: &Arc<RingPresentation>, arg: &Arg) -> Result<RIdeal> {
        match arg {
            Arg::Name(n) => match self.env.get(n) {
                Some(Value::Ideal(r, i)) if Arc::ptr_eq(r, ring) => Ok(i.clone()),
                Some(Value::Poly(r, p)) if Arc::ptr_eq(r, ring) => ring.ideal(vec![p.clone()]),
                Some(_) => Err(Error::ArityMismatch),
                None => Err(Error::UnboundName(n.clone())),
            },
            Arg::Ideal(gens) => ring.ideal(gens.clone()),
            Arg::Poly(p) => ring.ideal(vec![p.clone()]),
            Arg::Keyword { .. } => Err(Error::ArityMismatch),
        }
    }

    fn as_poly(&self, ring: &Arc<RingPresentation>, arg: &Arg) -> Result<Polynomial> {
        match arg {
            Arg::Name(n) => match self.env.get(n) {
                Some(Value::Poly(r, p)) if Arc::ptr_eq(r, ring) => Ok(p.clone()),
                Some(_) => Err(Error::ArityMismatch),
                None => Err(Error::UnboundName(n.clone())),
            },
            Arg::Poly(p) => {
                if p.nvars() != ring.nvars() {
                    return Err(Error::ArityMismatch);
                }
                Ok(p.clone())
            }
            _ => Err(Error::ArityMismatch),
        }
    }

    fn render_poly(&self, ring: &RingPresentation, p: &Polynomial) -> String {
        p.render(&ring.var_names(), ring.order())
    }

    fn render_polys(&self, ring: &RingPresentation, ps: &[Polynomial]) -> Vec<String> {
        ps.iter().map(|p| self.render_poly(ring, p)).collect()
    }

    /// Canonical presentation of an ideal of R: the reduced GB of the
    /// lift, each element reduced modulo K, sorted as text.
    fn present_ideal(
        &mut self,
        ring: &Arc<RingPresentation>,
        i: &RIdeal,
        budget: &mut WorkBudget,
    ) -> Result<Vec<String>> {
        let basis = self.gb_of_lift(ring, i, budget)?;
        let k_gb = ring.defining_gb().clone();
        let mut out: Vec<String> = basis
            .iter()
            .map(|g| k_gb.normal_form(g))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| self.render_poly(ring, &g))
            .collect();
        out.sort();
        out.dedup();
        if out.is_empty() {
            out.push("0".to_string());
        }
        Ok(out)
    }

    /// Reduced GB of the lift, going through the persistent cache when a
    /// workspace is configured.
    fn gb_of_lift(
        &mut self,
        ring: &Arc<RingPresentation>,
        i: &RIdeal,
        budget: &mut WorkBudget,
    ) -> Result<Vec<Polynomial>> {
        let lift = ring.lift(i);
        let gens_text: Vec<String> = self.render_polys(ring, lift.generators());
        if let Some(cache) = &self.cache {
            let key = cache::entry_key(
                ring.field().characteristic(),
                ring.vars(),
                ring.order().name(),
                &gens_text,
            );
            let mut warnings = Vec::new();
            if let Some(entry) = cache.get(&key, &mut |w| warnings.push(w.to_string())) {
                self.diagnostics.extend(warnings);
                return self.parse_cached_basis(ring, &entry.gb);
            }
            self.diagnostics.extend(warnings);
            let gb = lift.groebner_basis(ring.order(), budget)?;
            let entry = CacheEntry {
                version: cache::FORMAT_VERSION,
                p: ring.field().characteristic(),
                vars: ring.vars().to_vec(),
                order: ring.order().name().to_string(),
                gens: gens_text,
                gb: self.render_polys(ring, gb.basis()),
                created_at: cache::now_unix(),
            };
            if let Err(e) = cache.put(&key, &entry) {
                self.diagnostics.push(format!("cache write failed: {}", e));
            }
            return Ok(gb.basis().to_vec());
        }
        let gb = lift.groebner_basis(ring.order(), budget)?;
        Ok(gb.basis().to_vec())
    }

    /// Re-parses cached canonical basis text; the cache stores exactly
    /// what the renderer emits, so this is a strict round-trip.
    fn parse_cached_basis(
        &self,
        ring: &Arc<RingPresentation>,
        texts: &[String],
    ) -> Result<Vec<Polynomial>> {
        let header = format!(
            "R = GF({})[{}]\n",
            ring.field().characteristic(),
            ring.vars().join(",")
        );
        let mut source = header;
        for (k, t) in texts.iter().enumerate() {
            source.push_str(&format!("g{} = {}\n", k, t));
        }
        let script = crate::dsl::parse(&source)
            .map_err(|e| Error::Internal(format!("corrupt cached basis: {}", e)))?;
        Ok(script
            .stmts
            .into_iter()
            .skip(1)
            .filter_map(|s| match s {
                Stmt::LetPoly { poly, .. } => Some(poly),
                _ => None,
            })
            .collect())
    }

    fn q_list(&self, ring: &RingPresentation, qs: &[u64]) -> Result<Vec<FrobeniusExponent>> {
        qs.iter()
            .map(|&q| FrobeniusExponent::from_q(ring.field(), q))
            .collect()
    }

    fn inputs_json(&self, ring: &RingPresentation, args: &[Arg]) -> Json {
        let rendered: Vec<String> = args
            .iter()
            .map(|a| match a {
                Arg::Name(n) => n.clone(),
                Arg::Ideal(gens) => format!(
                    "ideal({})",
                    self.render_polys(ring, gens).join(", ")
                ),
                Arg::Poly(p) => self.render_poly(ring, p),
                Arg::Keyword { key, value } => format!("{}={}", key, value),
            })
            .collect();
        json!(rendered)
    }

    fn condition_report_json(
        &mut self,
        ring: &Arc<RingPresentation>,
        report: &ConditionReport,
    ) -> Json {
        let mut obj = json!({
            "verdict": match report.verdict {
                Verdict::HoldsOnAllTested => "holds_on_all_tested",
                Verdict::Violated => "violated",
            },
            "samples_tested": report.samples_tested,
        });
        if let Some(w) = &report.witness {
            obj.as_object_mut().unwrap().insert(
                "witness".to_string(),
                json!({
                    "xs": self.render_polys(ring, &w.xs),
                    "y": self.render_poly(ring, &w.y),
                    "q": w.q,
                    "lhs_gb": self.render_polys(ring, &w.lhs_gb),
                    "rhs_gb": self.render_polys(ring, &w.rhs_gb),
                    "separating": self.render_poly(ring, &w.separating),
                }),
            );
        }
        obj
    }

    fn command(&mut self, name: &str, args: &[Arg]) -> Result<Json> {
        let ring = self.resolve_ring(args)?;
        let mut budget = self.budget();
        let inputs = self.inputs_json(&ring, args);
        let scope = ring.defining_gb().basis().is_empty();
        let result: Json = match name {
            "gb" => {
                let pos = self.positional(args)?;
                let i = self.as_ideal(&ring, pos.first().ok_or(Error::ArityMismatch)?)?;
                let basis = self.present_ideal(&ring, &i, &mut budget)?;
                json!({ "basis": basis })
            }
            "member" => {
                let pos = self.positional(args)?;
                if pos.len() != 2 {
                    return Err(Error::ArityMismatch);
                }
                let f = self.as_poly(&ring, pos[0])?;
                let i = self.as_ideal(&ring, pos[1])?;
                json!({ "member": ring.r_member(&f, &i, &mut budget)? })
            }
            "colon" => {
                let pos = self.positional(args)?;
                if pos.len() != 2 {
                    return Err(Error::ArityMismatch);
                }
                let i = self.as_ideal(&ring, pos[0])?;
                let j = self.as_ideal(&ring, pos[1])?;
                let c = ring.r_colon(&i, &j, &mut budget)?;
                json!({ "generators": self.present_ideal(&ring, &c, &mut budget)? })
            }
            "intersect" => {
                let pos = self.positional(args)?;
                if pos.len() != 2 {
                    return Err(Error::ArityMismatch);
                }
                let i = ring.lift(&self.as_ideal(&ring, pos[0])?);
                let j = ring.lift(&self.as_ideal(&ring, pos[1])?);
                let c = ideal_ops::intersect(&i, &j, &mut budget)?;
                let c = ring.ideal(c.generators().to_vec())?;
                json!({ "generators": self.present_ideal(&ring, &c, &mut budget)? })
            }
            "bracket" => {
                let pos = self.positional(args)?;
                let i = self.as_ideal(&ring, pos.first().ok_or(Error::ArityMismatch)?)?;
                let q = self.keyword(args, "q").ok_or(Error::ArityMismatch)?;
                let q = FrobeniusExponent::from_q(ring.field(), q)?;
                let b = ring.r_bracket_power(&i, q)?;
                json!({ "generators": self.present_ideal(&ring, &b, &mut budget)? })
            }
            "length" => {
                let pos = self.positional(args)?;
                let i = self.as_ideal(&ring, pos.first().ok_or(Error::ArityMismatch)?)?;
                json!({ "lambda": invariants::length(&ring, &i, &mut budget)? })
            }
            "dim" => {
                json!({ "dim": invariants::krull_dim(&ring) })
            }
            "mu" => {
                let pos = self.positional(args)?;
                let i = self.as_ideal(&ring, pos.first().ok_or(Error::ArityMismatch)?)?;
                json!({ "mu": invariants::min_generators(&ring, &i, &mut budget)? })
            }
            "hk" => {
                let e_max = self.keyword(args, "e_max").unwrap_or(3);
                let e_max = u32::try_from(e_max).map_err(|_| Error::ExponentOverflow)?;
                let series = invariants::hk_series(&ring, e_max, &mut budget)?;
                serde_json::to_value(&series).expect("series serializes")
            }
            "kunz" => {
                let e = self.keyword(args, "e").unwrap_or(1);
                let e = u32::try_from(e).map_err(|_| Error::ExponentOverflow)?;
                let d = invariants::krull_dim(&ring);
                let q = FrobeniusExponent::new(ring.field(), e)?;
                let mq = ring.r_bracket_power(&ring.maximal_ideal(), q)?;
                let lambda = invariants::length_unchecked(&ring, &mq, &mut budget)?;
                let qd = q
                    .q()
                    .checked_pow(d as u32)
                    .ok_or(Error::ExponentOverflow)?;
                json!({
                    "e": e,
                    "q": q.q(),
                    "d": d,
                    "lambda": lambda,
                    "q_pow_d": qd,
                    "regular": lambda == qd,
                })
            }
            "mu_series" => {
                let pos = self.positional(args)?;
                let i = self.as_ideal(&ring, pos.first().ok_or(Error::ArityMismatch)?)?;
                let n_max = self.keyword(args, "n_max").unwrap_or(8);
                let n_max = u32::try_from(n_max.max(4)).map_err(|_| Error::ExponentOverflow)?;
                let report = invariants::mu_series(&ring, &i, n_max, &mut budget)?;
                let mut v = serde_json::to_value(&report).expect("report serializes");
                if let Some(h) = &report.fitted_poly {
                    v.as_object_mut()
                        .unwrap()
                        .insert("fitted_render".to_string(), json!(h.render()));
                }
                v
            }
            "check_ci" => {
                let pos = self.positional(args)?;
                if pos.len() != 2 {
                    return Err(Error::ArityMismatch);
                }
                let xs = self.as_ideal(&ring, pos[0])?;
                let y = self.as_poly(&ring, pos[1])?;
                let qs = self.keyword_all(args, "q");
                if qs.is_empty() {
                    return Err(Error::ArityMismatch);
                }
                let q_list = self.q_list(&ring, &qs)?;
                let report = conditions::check_ci_instance(
                    &ring,
                    xs.generators(),
                    &y,
                    &q_list,
                    &mut budget,
                )?;
                self.condition_report_json(&ring, &report)
            }
            "check_pair" => {
                let pos = self.positional(args)?;
                if pos.len() != 2 {
                    return Err(Error::ArityMismatch);
                }
                let i = self.as_ideal(&ring, pos[0])?;
                let j = self.as_ideal(&ring, pos[1])?;
                let qs = self.keyword_all(args, "q");
                if qs.is_empty() {
                    return Err(Error::ArityMismatch);
                }
                let q_list = self.q_list(&ring, &qs)?;
                let report =
                    conditions::check_ideal_pair(&ring, &i, &j, &q_list, &mut budget)?;
                self.condition_report_json(&ring, &report)
            }
            "search" => {
                let i = self.keyword(args, "i").unwrap_or(1) as usize;
                let deg = self.keyword(args, "deg").unwrap_or(2);
                let deg = u32::try_from(deg).map_err(|_| Error::ExponentOverflow)?;
                let qs = self.keyword_all(args, "q");
                if qs.is_empty() {
                    return Err(Error::ArityMismatch);
                }
                let q_list = self.q_list(&ring, &qs)?;
                let samples = self.keyword(args, "samples").unwrap_or(50);
                let seed = self.keyword(args, "seed").unwrap_or(self.config.seed);
                let report = conditions::search_violation(
                    &ring,
                    i,
                    deg,
                    &q_list,
                    samples,
                    seed,
                    &mut budget,
                )?;
                self.condition_report_json(&ring, &report)
            }
            "length_formula" => {
                let pos = self.positional(args)?;
                if pos.len() != 2 {
                    return Err(Error::ArityMismatch);
                }
                let i = self.as_ideal(&ring, pos[0])?;
                let j = self.as_ideal(&ring, pos[1])?;
                let qs = self.keyword_all(args, "q");
                if qs.is_empty() {
                    return Err(Error::ArityMismatch);
                }
                let q_list = self.q_list(&ring, &qs)?;
                let report =
                    conditions::check_length_formula(&ring, &i, &j, &q_list, &mut budget)?;
                serde_json::to_value(&report).expect("report serializes")
            }
            "principal" => {
                let pos = self.positional(args)?;
                if pos.len() != 2 {
                    return Err(Error::ArityMismatch);
                }
                let x = self.as_poly(&ring, pos[0])?;
                let y = self.as_poly(&ring, pos[1])?;
                let report = conditions::colon_principality(&ring, &x, &y, &mut budget)?;
                json!({
                    "is_principal": report.is_principal,
                    "mu": report.mu,
                    "generator": report
                        .generator
                        .as_ref()
                        .map(|g| self.render_poly(&ring, g)),
                })
            }
            "diagnose" => {
                let defaults = DiagnoseConfig::default();
                let config = DiagnoseConfig {
                    degree_bound: self
                        .keyword(args, "deg")
                        .map(|v| v as u32)
                        .unwrap_or(defaults.degree_bound),
                    e_max: self
                        .keyword(args, "e_max")
                        .map(|v| v as u32)
                        .unwrap_or(defaults.e_max),
                    sample_budget: self
                        .keyword(args, "samples")
                        .unwrap_or(defaults.sample_budget),
                    ideal_pair_samples: self
                        .keyword(args, "pairs")
                        .unwrap_or(defaults.ideal_pair_samples),
                    seed: self.keyword(args, "seed").unwrap_or(self.config.seed),
                    q_exponents: defaults.q_exponents,
                };
                let report = conditions::diagnose(&ring, &config, &mut budget)?;
                json!({
                    "regular": report.regular,
                    "hk": serde_json::to_value(&report.hk).expect("series serializes"),
                    "c0": self.condition_report_json(&ring, &report.c0),
                    "c1": self.condition_report_json(&ring, &report.c1),
                    "ideal_pairs": self.condition_report_json(&ring, &report.ideal_pairs),
                })
            }
            other => return Err(Error::UnboundName(other.to_string())),
        };
        let mut obj = json!({
            "cmd": name,
            "inputs": inputs,
            "result": result,
        });
        // Commands whose answers are read at the origin carry the scope
        // qualifier; purely syntactic ones (gb over the free ring) do not.
        let scoped = !matches!(name, "gb" | "member" | "intersect" | "dim") || !scope;
        if scoped {
            obj.as_object_mut()
                .unwrap()
                .insert("scope_note".to_string(), json!(crate::quotient::SCOPE_NOTE));
        }
        Ok(obj)
    }
}
