use std::cell::OnceCell;
use std::time::Instant;

use serde::Serialize;

use super::derange::{property_dp, DpOutcome};
use super::report::{validate_primes, CheckKind, CheckRecord, CheckReport, CheckRequest, Provenance, Verdict, Witness};
use crate::error::{Error, Result};
use crate::grpstruct::{
    cyclic_quotient_kernels, derived_series, is_metabelian, o_p_q, o_radical, quotient_group, relative_centralizer,
    relative_radical, sylow_subgroup_seeded, upper_series_from,
};
use crate::modrep::{ibr_degrees_capped, IBrProfile};
use crate::numbers::PrimeSet;
use crate::permcore::{derived_subgroup, normal_closure_unchecked, normalizer, right_transversal, PermGroup, Permutation};
use crate::DEFAULT_IBR_CAP;

/// A Brauer degree set taken from the literature for a group too large to
/// chop. Only the distinct degrees are recorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CitedDegrees {
    pub p: u64,
    pub degrees: Vec<u64>,
    pub citation: String,
}

/// Whether `q` divides no irreducible `p`-Brauer degree, and on what
/// evidence.
#[derive(Debug, Clone)]
pub struct QPrimeVerdict {
    pub holds: bool,
    pub provenance: Provenance,
    /// Sorted multiset when computed, distinct degrees when cited.
    pub degrees: Vec<u64>,
    pub profile: Option<IBrProfile>,
    /// Least degree divisible by `q`.
    pub offending: Option<u64>,
}

/// Seed, chopping cap and literature degree sets for a batch of checks.
#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub seed: u64,
    pub ibr_cap: u128,
    pub cited: Vec<CitedDegrees>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { seed: 0, ibr_cap: DEFAULT_IBR_CAP, cited: Vec::new() }
    }
}

/// Computed degrees when `|G|` is within the cap, otherwise a cited set
/// for `p`, otherwise `CapExceeded`.
pub fn ibr_qprime_with(g: &PermGroup, p: u64, q: u64, opts: &CheckOptions) -> Result<QPrimeVerdict> {
    let (degrees, provenance, profile) = if g.order() <= opts.ibr_cap {
        let prof = ibr_degrees_capped(g, p, opts.seed, opts.ibr_cap)?;
        (prof.degrees.clone(), Provenance::Computed, Some(prof))
    } else if let Some(c) = opts.cited.iter().find(|c| c.p == p) {
        let mut d = c.degrees.clone();
        d.sort_unstable();
        d.dedup();
        (d, Provenance::Cited, None)
    } else {
        return Err(Error::CapExceeded { order: g.order(), cap: opts.ibr_cap });
    };
    let offending = degrees.iter().copied().find(|d| d % q == 0);
    Ok(QPrimeVerdict { holds: offending.is_none(), provenance, degrees, profile, offending })
}

/// `q` divides no irreducible `p`-Brauer degree of `G` (computed).
pub fn ibr_qprime(g: &PermGroup, p: u64, q: u64) -> Result<bool> {
    Ok(ibr_qprime_with(g, p, q, &CheckOptions::default())?.holds)
}

/// The subgroup at which the upper `r`-series of `G` stops growing, or
/// `None` if `G` is `r`-solvable.
pub(crate) fn series_stall(g: &PermGroup, start: &PermGroup, r: u64) -> Result<Option<PermGroup>> {
    let steps = [PrimeSet::excluding(r), PrimeSet::single(r)];
    let mut cur = start.clone();
    let mut k = 0;
    let mut stalled = 0;
    while cur.order() < g.order() {
        let next = relative_radical(g, &cur, &steps[k % 2])?;
        if next.order() == cur.order() {
            stalled += 1;
            if stalled == 2 {
                return Ok(Some(cur));
            }
        } else {
            stalled = 0;
        }
        cur = next;
        k += 1;
    }
    Ok(None)
}

fn perfect_core(g: &PermGroup) -> PermGroup {
    derived_series(g).pop().expect("nonempty series")
}

fn non_commuting(g: &PermGroup) -> Option<(Permutation, Permutation)> {
    let gens = g.generators();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if !a.commutes_with(b) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

fn subgroup_witness(condition: &str, role: &str, h: &PermGroup) -> Witness {
    Witness::Subgroup { condition: condition.into(), role: role.into(), subgroup: h.into() }
}

/// Lazily computed data shared by the checks on one `(G, p, q)`.
pub struct CheckContext {
    g: PermGroup,
    p: u64,
    q: u64,
    opts: CheckOptions,
    sylow: OnceCell<PermGroup>,
    normalizer: OnceCell<PermGroup>,
    dp: OnceCell<DpOutcome>,
    p_stall: OnceCell<Option<PermGroup>>,
    residual: OnceCell<PermGroup>,
    qprime: OnceCell<std::result::Result<QPrimeVerdict, Error>>,
}

impl CheckContext {
    pub fn new(g: &PermGroup, p: u64, q: u64, opts: CheckOptions) -> Result<Self> {
        validate_primes(p, q)?;
        Ok(CheckContext {
            g: g.clone(),
            p,
            q,
            opts,
            sylow: OnceCell::new(),
            normalizer: OnceCell::new(),
            dp: OnceCell::new(),
            p_stall: OnceCell::new(),
            residual: OnceCell::new(),
            qprime: OnceCell::new(),
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.g
    }

    /// The fixed Sylow `q`-subgroup `Q`.
    pub fn sylow(&self) -> Result<&PermGroup> {
        if let Some(s) = self.sylow.get() {
            return Ok(s);
        }
        let s = sylow_subgroup_seeded(&self.g, self.q, self.opts.seed)?;
        Ok(self.sylow.get_or_init(|| s))
    }

    /// `N_G(Q)`.
    pub fn sylow_normalizer(&self) -> Result<&PermGroup> {
        if let Some(n) = self.normalizer.get() {
            return Ok(n);
        }
        let n = normalizer(&self.g, self.sylow()?)?;
        Ok(self.normalizer.get_or_init(|| n))
    }

    /// Property `D_p` for `(G, N_G(Q))`.
    pub fn dp_normalizer(&self) -> Result<&DpOutcome> {
        if let Some(d) = self.dp.get() {
            return Ok(d);
        }
        let d = property_dp(&self.g, self.sylow_normalizer()?, self.p)?;
        Ok(self.dp.get_or_init(|| d))
    }

    fn p_stall(&self) -> Result<&Option<PermGroup>> {
        if let Some(s) = self.p_stall.get() {
            return Ok(s);
        }
        let s = series_stall(&self.g, &PermGroup::trivial(self.g.degree()), self.p)?;
        Ok(self.p_stall.get_or_init(|| s))
    }

    pub fn is_p_solvable(&self) -> Result<bool> {
        Ok(self.p_stall()?.is_none())
    }

    /// `L = O^{q'}(G)`, the normal closure of `Q`.
    pub fn q_residual(&self) -> Result<&PermGroup> {
        if let Some(l) = self.residual.get() {
            return Ok(l);
        }
        let l = normal_closure_unchecked(&self.g, self.sylow()?.generators());
        Ok(self.residual.get_or_init(|| l))
    }

    pub fn ibr_qprime(&self) -> Result<&QPrimeVerdict> {
        self.qprime.get_or_init(|| ibr_qprime_with(&self.g, self.p, self.q, &self.opts)).as_ref().map_err(Clone::clone)
    }

    fn push_p_solvable(&self, r: &mut CheckRecord, condition: &str) -> Result<bool> {
        let stall = self.p_stall()?;
        r.cond(condition, Some(stall.is_none()));
        if let Some(s) = stall {
            r.witnesses.push(subgroup_witness(condition, "p-series stalls at", s));
        }
        Ok(stall.is_none())
    }

    fn push_qprime(&self, r: &mut CheckRecord, condition: &str, required: bool) -> Result<Option<bool>> {
        let v = match self.ibr_qprime() {
            Ok(v) => v,
            Err(e @ Error::CapExceeded { .. }) => {
                if required {
                    return Err(e);
                }
                r.cond(condition, None);
                r.notes.push(format!("{condition}: not evaluated ({e})"));
                return Ok(None);
            }
            Err(e) => return Err(e),
        };
        r.cond(condition, Some(v.holds));
        r.set_provenance(v.provenance);
        if let Some(d) = v.offending {
            r.witnesses.push(Witness::Degree { condition: condition.into(), degree: d, q: self.q });
        }
        Ok(Some(v.holds))
    }

    fn push_dp(&self, r: &mut CheckRecord, condition: &str) -> Result<bool> {
        let dp = self.dp_normalizer()?;
        r.cond(condition, Some(dp.holds));
        let h = self.sylow_normalizer()?;
        for c in &dp.missed {
            r.witnesses.push(Witness::missed_class(condition, c, h));
        }
        Ok(dp.holds)
    }

    fn push_residual_solvable(&self, r: &mut CheckRecord, condition: &str) -> Result<bool> {
        let core = perfect_core(self.q_residual()?);
        let ok = core.is_trivial();
        r.cond(condition, Some(ok));
        if !ok {
            r.witnesses.push(subgroup_witness(condition, "perfect core of q-residual", &core));
        }
        Ok(ok)
    }

    /// Hypothesis: `G` is `p`-solvable and `q` divides no `p`-Brauer
    /// degree. Conclusion: every `p`-regular class meets `N_G(Q)`.
    pub fn theorem_a(&self) -> Result<CheckRecord> {
        let mut r = CheckRecord::new(Provenance::GroupOnly);
        let ps = self.push_p_solvable(&mut r, "p_solvable")?;
        let qp = self.push_qprime(&mut r, "q_prime_degrees", ps)?;
        let hyp = ps && qp == Some(true);
        r.applicable = ps;
        r.hypothesis = Some(hyp);
        let concl = self.push_dp(&mut r, "normalizer_meets_p_regular_classes")?;
        r.conclusion = Some(concl);
        r.verdict = match (hyp, concl) {
            (false, _) => Verdict::HypothesisFails,
            (true, true) => Verdict::Consistent,
            (true, false) => Verdict::Violation,
        };
        Ok(r)
    }

    /// The three consequences of `q'`-degrees for `p`-solvable groups:
    /// solvable `q`-residual; abelian `q`-factors and metabelian Sylow;
    /// `q`-length at most one above `O_{p,q}`.
    pub fn manz_wolf(&self) -> Result<CheckRecord> {
        let mut r = CheckRecord::new(Provenance::GroupOnly);
        let ps = self.push_p_solvable(&mut r, "p_solvable")?;
        let qp = self.push_qprime(&mut r, "q_prime_degrees", ps)?;
        let hyp = ps && qp == Some(true);
        r.hypothesis = Some(hyp);

        let c1 = self.push_residual_solvable(&mut r, "q_residual_solvable")?;

        let trivial = PermGroup::trivial(self.g.degree());
        let c2a = match series_stall(&self.g, &trivial, self.q)? {
            Some(s) => {
                r.witnesses.push(subgroup_witness("q_factors_abelian", "q-series stalls at", &s));
                false
            }
            None => {
                let series = upper_series_from(&self.g, &trivial, self.q)?;
                let bad = series.q_factors().find(|t| !t.factor_abelian).map(|t| t.subgroup.clone());
                if let Some(t) = &bad {
                    r.witnesses.push(subgroup_witness("q_factors_abelian", "top of nonabelian q-factor", t));
                }
                bad.is_none()
            }
        };
        r.cond("q_factors_abelian", Some(c2a));
        let sylow = self.sylow()?;
        let c2b = is_metabelian(sylow);
        r.cond("sylow_metabelian", Some(c2b));
        if !c2b {
            r.witnesses.push(subgroup_witness("sylow_metabelian", "Sylow q-subgroup", sylow));
        }

        let opq = o_p_q(&self.g, self.p, self.q)?;
        let c3 = match series_stall(&self.g, &opq, self.q)? {
            Some(s) => {
                r.witnesses.push(subgroup_witness("q_length_at_most_1", "q-series above O_{p,q} stalls at", &s));
                false
            }
            None => {
                let series = upper_series_from(&self.g, &opq, self.q)?;
                let ok = series.q_length() <= 1;
                if !ok {
                    let second = series.q_factors().nth(1).expect("two q-factors");
                    r.witnesses.push(subgroup_witness("q_length_at_most_1", "top of second q-factor", &second.subgroup));
                }
                ok
            }
        };
        r.cond("q_length_at_most_1", Some(c3));

        let concl = c1 && c2a && c2b && c3;
        r.conclusion = Some(concl);
        r.verdict = match (hyp, concl) {
            (false, _) => Verdict::HypothesisFails,
            (true, true) => Verdict::Consistent,
            (true, false) => Verdict::Violation,
        };
        Ok(r)
    }

    /// For abelian `Q` and `p`-solvable `G`: `q'`-degrees iff `N_G(Q)`
    /// meets every `p`-regular class and `O^{q'}(G)` is solvable.
    pub fn theorem_b(&self) -> Result<CheckRecord> {
        let mut r = CheckRecord::new(Provenance::GroupOnly);
        let abelian = self.sylow()?.is_abelian();
        r.cond("sylow_abelian", Some(abelian));
        let ps = self.push_p_solvable(&mut r, "p_solvable")?;
        if !abelian || !ps {
            if let Some((a, b)) = non_commuting(self.sylow()?) {
                r.witnesses.push(Witness::NonCommuting { condition: "sylow_abelian".into(), a, b });
            }
            r.applicable = false;
            r.verdict = Verdict::NotApplicable;
            return Ok(r);
        }
        let left = self.push_qprime(&mut r, "q_prime_degrees", true)?.expect("required");
        let c1 = self.push_dp(&mut r, "normalizer_meets_p_regular_classes")?;
        let c2 = self.push_residual_solvable(&mut r, "q_residual_solvable")?;
        let right = c1 && c2;
        r.left = Some(left);
        r.right = Some(right);
        r.verdict = if left == right { Verdict::Consistent } else { Verdict::Violation };
        Ok(r)
    }

    /// For `p`-solvable `G` with `O_p(G) = 1`: `q'`-degrees iff conditions
    /// (1)-(4) on `L = O^{q'}(G)`, `O_q(L)` and the kernels of its cyclic
    /// quotients hold.
    pub fn characterization(&self) -> Result<CheckRecord> {
        let mut r = CheckRecord::new(Provenance::GroupOnly);
        let ps = self.push_p_solvable(&mut r, "p_solvable")?;
        let op = o_radical(&self.g, &PrimeSet::single(self.p))?;
        r.cond("o_p_trivial", Some(op.is_trivial()));
        if !op.is_trivial() {
            r.witnesses.push(subgroup_witness("o_p_trivial", "O_p(G)", &op));
        }
        if !ps || !op.is_trivial() {
            r.applicable = false;
            r.verdict = Verdict::NotApplicable;
            return Ok(r);
        }
        let left = self.push_qprime(&mut r, "q_prime_degrees", true)?.expect("required");
        let c1 = self.push_dp(&mut r, "1_normalizer_meets_p_regular_classes")?;
        let c2 = self.push_residual_solvable(&mut r, "2_q_residual_solvable")?;

        let l = self.q_residual()?;
        let o = o_radical(l, &PrimeSet::single(self.q))?;
        let c3 = o.is_abelian();
        r.cond("3_o_q_abelian", Some(c3));
        let c4 = if let Some((a, b)) = non_commuting(&o) {
            r.witnesses.push(Witness::NonCommuting { condition: "3_o_q_abelian".into(), a, b });
            r.cond("4_kernels", None);
            r.notes.push("4_kernels: not evaluated, O_q(L) is nonabelian".into());
            false
        } else {
            let (ok, checked) = self.kernel_conditions(&mut r, l, &o)?;
            r.cond("4_kernels", Some(ok));
            r.notes.push(format!("4_kernels: {checked} kernels checked"));
            ok
        };
        let right = c1 && c2 && c3 && c4;
        r.left = Some(left);
        r.right = Some(right);
        r.verdict = if left == right { Verdict::Consistent } else { Verdict::Violation };
        Ok(r)
    }

    /// Conditions (a) and (b) for every `N ≤ O_q(L)` with cyclic quotient.
    /// Returns whether all hold and the number of kernels examined.
    fn kernel_conditions(&self, r: &mut CheckRecord, l: &PermGroup, o: &PermGroup) -> Result<(bool, usize)> {
        let q = self.sylow()?;
        let nl = normalizer(l, q)?;
        // conjugates of Q in L correspond to right cosets of N_L(Q)
        let conjugates: Vec<(Permutation, PermGroup, PermGroup)> = right_transversal(l, &nl)?
            .into_iter()
            .map(|t| {
                let qt = q.conjugate(&t);
                let d = derived_subgroup(&qt);
                (t, qt, d)
            })
            .collect();
        let kernels = cyclic_quotient_kernels(o)?;
        let mut all_a = true;
        let mut all_b = true;
        for n in &kernels {
            let found = conjugates.iter().find(|(_, _, d)| d.is_subgroup_of(n));
            let Some((t, qt, _)) = found else {
                all_a = false;
                r.witnesses.push(Witness::Kernel {
                    condition: "4a_conjugate_derived_in_kernel".into(),
                    kernel: n.into(),
                    conjugator: None,
                    missed_class: None,
                });
                continue;
            };
            let c = relative_centralizer(l, o, n)?;
            let dp = if o.is_trivial() {
                let nc = normalizer(&c, qt)?;
                property_dp(&c, &nc, self.p)?.witness().map(|cl| cl.representative().clone())
            } else {
                let (cbar, epi) = quotient_group(&c, o)?;
                let qbar = epi.image_of(qt)?;
                let nbar = normalizer(&cbar, &qbar)?;
                property_dp(&cbar, &nbar, self.p)?.witness().map(|cl| epi.lift(cl.representative()))
            };
            if let Some(x) = dp {
                all_b = false;
                r.witnesses.push(Witness::Kernel {
                    condition: "4b_quotient_normalizer_meets_p_regular_classes".into(),
                    kernel: n.into(),
                    conjugator: Some(t.clone()),
                    missed_class: Some(x),
                });
            }
        }
        r.cond("4a_conjugate_derived_in_kernel", Some(all_a));
        r.cond("4b_quotient_normalizer_meets_p_regular_classes", Some(all_b));
        Ok((all_a && all_b, kernels.len()))
    }

    /// The degree computation itself: degrees, count identity, `q`-check.
    pub fn ibr(&self) -> Result<CheckRecord> {
        let mut r = CheckRecord::new(Provenance::GroupOnly);
        let holds = self.push_qprime(&mut r, "q_prime_degrees", true)?.expect("required");
        let v = self.ibr_qprime()?;
        if let Some(prof) = &v.profile {
            r.cond("count_identity", Some(prof.degrees.len() == prof.class_count));
        } else if let Some(c) = self.opts.cited.iter().find(|c| c.p == self.p) {
            r.cond("count_identity", None);
            r.notes.push(format!("cited: {}", c.citation));
        }
        r.conclusion = Some(holds);
        r.degrees = Some(v.degrees.clone());
        Ok(r)
    }

    pub fn run(&self, kind: CheckKind) -> Result<CheckRecord> {
        match kind {
            CheckKind::TheoremA => self.theorem_a(),
            CheckKind::ManzWolf => self.manz_wolf(),
            CheckKind::TheoremB => self.theorem_b(),
            CheckKind::Characterization => self.characterization(),
            CheckKind::Ibr => self.ibr(),
        }
    }
}

pub fn check_theorem_a(g: &PermGroup, p: u64, q: u64) -> Result<CheckRecord> {
    CheckContext::new(g, p, q, CheckOptions::default())?.theorem_a()
}

pub fn check_manz_wolf(g: &PermGroup, p: u64, q: u64) -> Result<CheckRecord> {
    CheckContext::new(g, p, q, CheckOptions::default())?.manz_wolf()
}

pub fn check_theorem_b(g: &PermGroup, p: u64, q: u64) -> Result<CheckRecord> {
    CheckContext::new(g, p, q, CheckOptions::default())?.theorem_b()
}

pub fn check_characterization(g: &PermGroup, p: u64, q: u64) -> Result<CheckRecord> {
    CheckContext::new(g, p, q, CheckOptions::default())?.characterization()
}

/// Runs every requested check on `g` and collects the records.
pub fn run_checks(req: &CheckRequest, g: &PermGroup, cited: &[CitedDegrees]) -> Result<CheckReport> {
    req.validate()?;
    let g = g.clone().with_enum_cap(req.enum_cap);
    let opts = CheckOptions { seed: req.seed, ibr_cap: req.ibr_cap, cited: cited.to_vec() };
    let ctx = CheckContext::new(&g, req.p, req.q, opts)?;
    let mut report = CheckReport {
        group: req.group.clone(),
        order: g.order(),
        p: req.p,
        q: req.q,
        seed: req.seed,
        checks: Default::default(),
        timings: Default::default(),
    };
    for &kind in &req.checks {
        let start = Instant::now();
        let rec = ctx.run(kind)?;
        report.timings.insert(kind.to_string(), start.elapsed().as_secs_f64() * 1e3);
        report.checks.insert(kind.to_string(), rec);
    }
    Ok(report)
}
