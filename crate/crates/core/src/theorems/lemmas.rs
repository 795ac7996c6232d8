use std::collections::{BTreeMap, HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::checks::{ibr_qprime_with, CheckOptions};
use super::derange::{missed_classes, property_dp};
use crate::error::Result;
use crate::grpstruct::{o_radical, quotient_group, sylow_subgroup_seeded, Epimorphism};
use crate::numbers::{is_prime_power, prime_divisors, PrimeSet};
use crate::permcore::{
    centralizer, centralizer_of_subgroup, derived_subgroup, intersection, normal_closure_unchecked, normalizer,
    PermGroup, Permutation,
};

/// Lemma keys, in report order.
pub const LEMMAS: [&str; 11] = [
    "derangements_in_normal_subgroup",
    "dp_restriction",
    "dp_quotient",
    "dp_overgroup",
    "dp_lift",
    "dp_normal_inheritance",
    "normal_q_complement",
    "relative_centralizer",
    "glauberman_fixed_point",
    "jordan",
    "fks_prime_power_derangement",
];

/// Knobs for [`lemma_property_suite_with`].
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Primes tried besides the divisors of `|G|`.
    pub primes: Vec<u64>,
    /// Random subgroups added to each pool.
    pub random_subgroups: usize,
    /// Largest subgroup whose Brauer degrees are computed.
    pub ibr_max_order: u128,
    /// Configurations per lemma and group before moving on.
    pub per_group_cap: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 0, primes: vec![2, 3, 5, 7], random_subgroups: 12, ibr_max_order: 200, per_group_cap: 80 }
    }
}

/// A configuration satisfying a lemma's hypotheses but not its conclusion.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaFailure {
    pub lemma: String,
    pub group: String,
    pub configuration: String,
}

/// Configurations exercised per lemma, and any failures.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub counts: BTreeMap<String, usize>,
    pub failures: Vec<LemmaFailure>,
}

impl LemmaReport {
    /// No failures and at least `min` configurations for every lemma.
    pub fn passed(&self, min: usize) -> bool {
        self.failures.is_empty() && LEMMAS.iter().all(|l| self.counts.get(*l).copied().unwrap_or(0) >= min)
    }
}

pub fn lemma_property_suite(corpus: &[(String, PermGroup)], seed: u64) -> Result<LemmaReport> {
    lemma_property_suite_with(corpus, &SuiteOptions { seed, ..SuiteOptions::default() })
}

/// Evaluates every lemma on configurations drawn from each corpus group: a
/// pool of structural and random subgroups, all normal subgroups, and the
/// given primes together with the divisors of `|G|`.
pub fn lemma_property_suite_with(corpus: &[(String, PermGroup)], opts: &SuiteOptions) -> Result<LemmaReport> {
    let mut report = LemmaReport { counts: LEMMAS.iter().map(|l| (l.to_string(), 0)).collect(), failures: Vec::new() };
    for (i, (name, g)) in corpus.iter().enumerate() {
        let data = GroupData::new(g, opts, opts.seed.wrapping_add(i as u64))?;
        let mut run = Run { name, data: &data, opts, report: &mut report };
        run.derangements_in_normal_subgroup()?;
        run.dp_restriction()?;
        run.dp_quotient()?;
        run.dp_overgroup()?;
        run.dp_lift()?;
        run.dp_normal_inheritance()?;
        run.normal_q_complement()?;
        run.relative_centralizer()?;
        run.glauberman_fixed_point()?;
        run.jordan_and_fks()?;
    }
    Ok(report)
}

fn key(h: &PermGroup) -> Result<Vec<Permutation>> {
    Ok(h.elements()?.to_vec())
}

fn describe(h: &PermGroup) -> String {
    let gens: Vec<String> = h.generators().iter().map(|x| x.to_string()).collect();
    format!("<{}> of order {}", gens.join(", "), h.order())
}

struct Pool {
    groups: Vec<PermGroup>,
    seen: HashSet<Vec<Permutation>>,
}

impl Pool {
    fn push(&mut self, h: PermGroup) -> Result<bool> {
        if self.seen.insert(key(&h)?) {
            self.groups.push(h);
            return Ok(true);
        }
        Ok(false)
    }
}

/// All normal subgroups, as joins of normal closures of classes.
fn normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut pool = Pool { groups: Vec::new(), seen: HashSet::new() };
    pool.push(PermGroup::trivial(g.degree()))?;
    let mut atoms = Vec::new();
    for c in g.conjugacy_classes()? {
        let n = normal_closure_unchecked(g, std::slice::from_ref(c.representative()));
        if pool.push(n.clone())? {
            atoms.push(n);
        }
    }
    let mut k = 0;
    while k < pool.groups.len() {
        for a in &atoms {
            let j = pool.groups[k].join(a);
            pool.push(j)?;
        }
        k += 1;
    }
    pool.groups.sort_by_key(|h| h.order());
    Ok(pool.groups)
}

struct GroupData {
    g: PermGroup,
    primes: Vec<u64>,
    pool: Vec<PermGroup>,
    normals: Vec<PermGroup>,
    /// Classes of `G` missing each pool member.
    missed: Vec<Vec<usize>>,
}

impl GroupData {
    fn new(g: &PermGroup, opts: &SuiteOptions, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let normals = normal_subgroups(g)?;
        let mut pool = Pool { groups: Vec::new(), seen: HashSet::new() };
        for n in &normals {
            pool.push(n.clone())?;
        }
        pool.push(derived_subgroup(g))?;
        let divisors = prime_divisors(g.order());
        for &r in &divisors {
            let s = sylow_subgroup_seeded(g, r, seed)?;
            pool.push(normalizer(g, &s)?)?;
            pool.push(s)?;
        }
        for c in g.conjugacy_classes()? {
            let x = c.representative();
            pool.push(g.subgroup(vec![x.clone()])?)?;
            pool.push(centralizer(g, x)?)?;
        }
        if g.degree() > 0 {
            let stab = g.elements()?.iter().filter(|x| x.image(0) == 0).cloned().collect();
            pool.push(g.subgroup_from_elements(stab))?;
        }
        for k in 0..opts.random_subgroups {
            let mut gens = vec![g.random_element(&mut rng)];
            if k % 2 == 1 {
                gens.push(g.random_element(&mut rng));
            }
            pool.push(g.subgroup(gens)?)?;
        }
        let mut pool = pool.groups;
        pool.sort_by_key(|h| h.order());
        let missed = pool.iter().map(|h| missed_classes(g, h)).collect::<Result<Vec<_>>>()?;
        let mut primes = divisors;
        primes.extend(&opts.primes);
        primes.sort_unstable();
        primes.dedup();
        Ok(GroupData { g: g.clone(), primes, pool, normals, missed })
    }

    /// `D_p` for `(G, pool[i])` from the cached missed classes.
    fn dp(&self, i: usize, p: u64) -> Result<bool> {
        let classes = self.g.conjugacy_classes()?;
        Ok(self.missed[i].iter().all(|&c| !classes[c].is_p_regular(p)))
    }

    fn proper(&self) -> impl Iterator<Item = (usize, &PermGroup)> {
        self.pool.iter().enumerate().filter(|(_, h)| h.order() < self.g.order())
    }
}

struct Run<'a> {
    name: &'a str,
    data: &'a GroupData,
    opts: &'a SuiteOptions,
    report: &'a mut LemmaReport,
}

impl Run<'_> {
    fn record(&mut self, lemma: &str, ok: bool, configuration: impl FnOnce() -> String) {
        *self.report.counts.get_mut(lemma).expect("known lemma") += 1;
        if !ok {
            self.report.failures.push(LemmaFailure {
                lemma: lemma.into(),
                group: self.name.into(),
                configuration: configuration(),
            });
        }
    }

    /// `G = HL`, `H ∩ L ≤ T < L`: every `T`-derangement of `L` is an
    /// `H`-derangement of `G`.
    fn derangements_in_normal_subgroup(&mut self) -> Result<()> {
        let d = self.data;
        let g = &d.g;
        let mut n = 0;
        for l in &d.normals {
            for (hi, h) in d.proper() {
                let meet = intersection(h, l)?;
                if h.order() * l.order() / meet.order() != g.order() {
                    continue;
                }
                let mut ts: Vec<&PermGroup> =
                    d.pool.iter().filter(|t| t.order() < l.order() && t.is_subgroup_of(l) && meet.is_subgroup_of(t)).collect();
                if meet.order() < l.order() && !ts.iter().any(|t| t.same_as(&meet)) {
                    ts.push(&meet);
                }
                for t in ts {
                    if n >= self.opts.per_group_cap {
                        return Ok(());
                    }
                    n += 1;
                    let l_classes = l.conjugacy_classes()?;
                    let mut ok = true;
                    for ci in missed_classes(l, t)? {
                        let x = l_classes[ci].representative();
                        let gi = g.class_index(x)?.expect("x lies in G");
                        ok &= d.missed[hi].binary_search(&gi).is_ok();
                    }
                    self.record("derangements_in_normal_subgroup", ok, || {
                        format!("H = {}, L = {}, T = {}", describe(h), describe(l), describe(t))
                    });
                }
            }
        }
        Ok(())
    }

    /// `G = HL` and `D_p(G, H)` give `D_p(L, H ∩ L)`.
    fn dp_restriction(&mut self) -> Result<()> {
        let d = self.data;
        let mut n = 0;
        for l in &d.normals {
            for (hi, h) in d.proper() {
                let meet = intersection(h, l)?;
                if h.order() * l.order() / meet.order() != d.g.order() {
                    continue;
                }
                for &p in &d.primes {
                    if !d.dp(hi, p)? || n >= self.opts.per_group_cap {
                        continue;
                    }
                    n += 1;
                    let ok = property_dp(l, &meet, p)?.holds;
                    self.record("dp_restriction", ok, || format!("p = {p}, H = {}, L = {}", describe(h), describe(l)));
                }
            }
        }
        Ok(())
    }

    /// `L` a `p`- or `p'`-group, `G ≠ HL`, `D_p(G, H)` give
    /// `D_p(G/L, HL/L)`.
    fn dp_quotient(&mut self) -> Result<()> {
        let d = self.data;
        let mut n = 0;
        for l in d.normals.iter().filter(|l| !l.is_trivial() && l.order() < d.g.order()) {
            let mut quotient: Option<(PermGroup, Epimorphism)> = None;
            for &p in &d.primes {
                let pi = PrimeSet::single(p);
                if !pi.admits(l.order()) && !PrimeSet::excluding(p).admits(l.order()) {
                    continue;
                }
                for (hi, h) in d.proper() {
                    if h.join(l).order() == d.g.order() || !d.dp(hi, p)? || n >= self.opts.per_group_cap {
                        continue;
                    }
                    n += 1;
                    if quotient.is_none() {
                        quotient = Some(quotient_group(&d.g, l)?);
                    }
                    let (gbar, epi) = quotient.as_ref().expect("built");
                    let hbar = epi.image_of(h)?;
                    let ok = property_dp(gbar, &hbar, p)?.holds;
                    self.record("dp_quotient", ok, || format!("p = {p}, H = {}, L = {}", describe(h), describe(l)));
                }
            }
        }
        Ok(())
    }

    /// `H ≤ K < G` and `D_p(G, H)` give `D_p(G, K)`.
    fn dp_overgroup(&mut self) -> Result<()> {
        let d = self.data;
        let mut n = 0;
        for (hi, h) in d.proper() {
            for (ki, k) in d.proper() {
                if hi == ki || !h.is_subgroup_of(k) {
                    continue;
                }
                for &p in &d.primes {
                    if !d.dp(hi, p)? || n >= self.opts.per_group_cap {
                        continue;
                    }
                    n += 1;
                    let ok = property_dp(&d.g, k, p)?.holds;
                    self.record("dp_overgroup", ok, || format!("p = {p}, H = {}, K = {}", describe(h), describe(k)));
                }
            }
        }
        Ok(())
    }

    /// `L ⊴ G`, `L ≤ H < G` and `D_p(G/L, H/L)` give `D_p(G, H)`. Besides
    /// pool members over `L`, the joins `HL` of the others are used.
    fn dp_lift(&mut self) -> Result<()> {
        let d = self.data;
        let mut n = 0;
        for l in d.normals.iter().filter(|l| !l.is_trivial() && l.order() < d.g.order()) {
            let mut over: Vec<PermGroup> = Vec::new();
            for (_, h) in d.proper() {
                let hl = if l.is_subgroup_of(h) { h.clone() } else { h.join(l) };
                if hl.order() < d.g.order() && !over.iter().any(|x| x.same_as(&hl)) {
                    over.push(hl);
                }
            }
            if over.is_empty() {
                continue;
            }
            let (gbar, epi) = quotient_group(&d.g, l)?;
            for h in &over {
                let hbar = epi.image_of(h)?;
                for &p in &d.primes {
                    if n >= self.opts.per_group_cap || !property_dp(&gbar, &hbar, p)?.holds {
                        continue;
                    }
                    n += 1;
                    let ok = property_dp(&d.g, h, p)?.holds;
                    self.record("dp_lift", ok, || format!("p = {p}, H = {}, L = {}", describe(h), describe(l)));
                }
            }
        }
        Ok(())
    }

    /// If `N_G(Q)` meets every `p`-regular class of `G`, then `N_L(Q ∩ L)`
    /// meets every `p`-regular class of each normal `L`.
    fn dp_normal_inheritance(&mut self) -> Result<()> {
        let d = self.data;
        let mut n = 0;
        for &q in &d.primes {
            if d.g.order() % q as u128 != 0 {
                continue;
            }
            let s = sylow_subgroup_seeded(&d.g, q, self.opts.seed)?;
            let ng = normalizer(&d.g, &s)?;
            for &p in d.primes.iter().filter(|&&p| p != q) {
                if !property_dp(&d.g, &ng, p)?.holds {
                    continue;
                }
                for l in &d.normals {
                    if n >= self.opts.per_group_cap {
                        return Ok(());
                    }
                    n += 1;
                    let u = intersection(&s, l)?;
                    let nl = normalizer(l, &u)?;
                    let ok = property_dp(l, &nl, p)?.holds;
                    self.record("dp_normal_inheritance", ok, || {
                        format!("p = {p}, q = {q}, Q = {}, L = {}", describe(&s), describe(l))
                    });
                }
            }
        }
        Ok(())
    }

    /// For `X = Q O_{q'}(X)` with `q'`-degree Brauer characters: `Q` is
    /// abelian, every `p`-regular class of `K = O_{q'}(X)` meets `C_K(Q)`,
    /// and every `p`-regular class of `X` meets `N_X(Q)`.
    fn normal_q_complement(&mut self) -> Result<()> {
        let d = self.data;
        let mut n = 0;
        let candidates = d.pool.iter().filter(|x| x.order() <= self.opts.ibr_max_order);
        for x in candidates {
            let mut degrees: HashMap<u64, Vec<u64>> = HashMap::new();
            for &q in &d.primes {
                if x.order() % q as u128 != 0 {
                    continue;
                }
                let qs = sylow_subgroup_seeded(x, q, self.opts.seed)?;
                let k = o_radical(x, &PrimeSet::excluding(q))?;
                if qs.order() * k.order() != x.order() {
                    continue;
                }
                for &p in d.primes.iter().filter(|&&p| p != q) {
                    if n >= self.opts.per_group_cap {
                        return Ok(());
                    }
                    if !degrees.contains_key(&p) {
                        let cfg = CheckOptions { seed: self.opts.seed, ..CheckOptions::default() };
                        degrees.insert(p, ibr_qprime_with(x, p, q, &cfg)?.degrees);
                    }
                    if degrees[&p].iter().any(|deg| deg % q == 0) {
                        continue;
                    }
                    n += 1;
                    let ck = centralizer_of_subgroup(&k, &qs)?;
                    let nx = normalizer(x, &qs)?;
                    let ok = qs.is_abelian() && property_dp(&k, &ck, p)?.holds && property_dp(x, &nx, p)?.holds;
                    self.record("normal_q_complement", ok, || format!("p = {p}, q = {q}, X = {}", describe(x)));
                }
            }
        }
        Ok(())
    }

    /// `C_G(M/N)` is a subgroup normalizing `N` and contains every
    /// `M ≤ K ≤ G` with `K' ≤ N`.
    fn relative_centralizer(&mut self) -> Result<()> {
        let d = self.data;
        let g = &d.g;
        let mut n_cfg = 0;
        for m in &d.normals {
            let subs: Vec<&PermGroup> = d.pool.iter().filter(|n| n.is_subgroup_of(m) && n.is_normal_in(m)).collect();
            for n in subs {
                if n_cfg >= self.opts.per_group_cap {
                    return Ok(());
                }
                n_cfg += 1;
                let set: Vec<Permutation> = g
                    .elements()?
                    .iter()
                    .filter(|x| m.generators().iter().all(|y| n.has(&Permutation::commutator(x, y))))
                    .cloned()
                    .collect();
                let closure = g.subgroup(set.clone())?;
                let mut ok = closure.order() == set.len() as u128;
                ok &= n.is_subgroup_of(&closure) && n.is_normal_in(&closure);
                for k in d.pool.iter().filter(|k| m.is_subgroup_of(k)) {
                    if derived_subgroup(k).is_subgroup_of(n) {
                        ok &= k.is_subgroup_of(&closure);
                    }
                }
                self.record("relative_centralizer", ok, || format!("M = {}, N = {}", describe(m), describe(n)));
            }
        }
        Ok(())
    }

    /// A `q`-group `Q` acting coprimely on `K = O_{q'}(X)` fixes an
    /// element of every `Q`-stable class of `K`.
    fn glauberman_fixed_point(&mut self) -> Result<()> {
        let d = self.data;
        let mut n = 0;
        for x in &d.pool {
            for &q in &d.primes {
                if x.order() % q as u128 != 0 {
                    continue;
                }
                let k = o_radical(x, &PrimeSet::excluding(q))?;
                if k.is_trivial() {
                    continue;
                }
                let qs = sylow_subgroup_seeded(x, q, self.opts.seed)?;
                for (ci, c) in k.conjugacy_classes()?.iter().enumerate() {
                    let stable = qs
                        .generators()
                        .iter()
                        .all(|y| k.class_index(&c.representative().conjugate_by(y)).ok().flatten() == Some(ci));
                    if !stable {
                        continue;
                    }
                    if n >= self.opts.per_group_cap {
                        return Ok(());
                    }
                    n += 1;
                    let ok = c.members().iter().any(|z| qs.generators().iter().all(|y| z.commutes_with(y)));
                    self.record("glauberman_fixed_point", ok, || {
                        format!("q = {q}, X = {}, class of {}", describe(x), c.representative())
                    });
                }
            }
        }
        Ok(())
    }

    /// Every proper subgroup misses some class, and some missed class
    /// consists of elements of prime-power order.
    fn jordan_and_fks(&mut self) -> Result<()> {
        let d = self.data;
        let classes = d.g.conjugacy_classes()?;
        for (hi, h) in d.proper().take(self.opts.per_group_cap) {
            let missed = &d.missed[hi];
            self.record("jordan", !missed.is_empty(), || format!("H = {}", describe(h)));
            let ok = missed.iter().any(|&c| is_prime_power(classes[c].element_order()));
            self.record("fks_prime_power_derangement", ok, || format!("H = {}", describe(h)));
        }
        if d.g.is_transitive() && d.g.degree() > 1 {
            let ok = d.g.elements()?.iter().any(|x| x.fixed_points() == 0 && is_prime_power(x.order()));
            self.record("fks_prime_power_derangement", ok, || "natural action".into());
        }
        Ok(())
    }
}
