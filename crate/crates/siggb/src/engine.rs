//! The generic signature-based Groebner basis engine.
//!
//! One increment extends a reduced basis of the first `i` generators by a
//! new generator. Every critical pair carries a monic signature in the new
//! component; pairs are processed stage by stage (ascending signature
//! degree) and within a stage by ascending signature. The strategy plugs
//! in at four points: how the syzygy set starts, how the pending queue and
//! the current stage are pruned, how zero reductions feed the syzygy set,
//! and which finished reductions may generate new pairs.
//!
//! Zero and redundant entries stay in the basis list — they keep reducing
//! and rewriting — but generate no pairs and are filtered from the output.

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::monomial::Monomial;
use crate::oracle::{interreduce, GroebnerBasis};
use crate::poly::{Polynomial, Ring};
use crate::sig::{CriticalPair, LabeledPoly, MonSig, SyzygySet};
use crate::strategy::{PairGate, ReductionMode, RewriteRule, Rule, RuleList, StrategyConfig};
use std::cmp::Ordering;
use std::time::Instant;

#[derive(Debug, Clone, Default)]
pub struct EngineOptions {
    /// Track module cofactors alongside every S-polynomial and reduction.
    pub certify: bool,
    /// Verify engine invariants at runtime (reduction fixpoints, pair
    /// orientation, processing order, redundancy-check agreement, the
    /// termination measure). Violations are counted, not fatal.
    pub checks: bool,
    /// Abort once this many pairs have been reduced.
    pub pair_limit: Option<u64>,
    /// Abort when the wall clock passes this instant.
    pub deadline: Option<Instant>,
}

/// Counters accumulated across all increments of a run. The verification
/// counters are only meaningful when `EngineOptions::checks` is set.
#[derive(Debug, Clone, Copy, Default)]
pub struct EngineStats {
    /// S-polynomial reductions performed, i.e. pairs surviving all pruning.
    pub pairs_reduced: u64,
    /// Reductions that ended in the zero polynomial.
    pub zero_reductions: u64,
    /// Inputs skipped because they reduce to zero against the basis so far.
    pub skipped_inputs: u64,
    pub increments: u64,
    pub entries_appended: u64,
    pub redundant_entries: u64,
    /// Nonzero, non-redundant entries: the increment's basis contributions.
    pub basis_contributions: u64,
    pub syz_pruned_pending: u64,
    pub syz_pruned_stage: u64,
    pub rewrite_pruned: u64,
    pub mm_substitutions: u64,
    pub reduction_steps: u64,

    pub redundancy_calls: u64,
    pub redundancy_eq_div_mismatches: u64,
    pub gs_vs_redundant_mismatches: u64,
    pub type_a_fixpoint_violations: u64,
    pub type_b_fixpoint_violations: u64,
    pub orientation_violations: u64,
    pub order_violations: u64,
    pub termination_violations: u64,
}

impl EngineStats {
    /// All invariant counters at zero — the expected state of a checked run.
    pub fn clean(&self) -> bool {
        self.redundancy_eq_div_mismatches == 0
            && self.gs_vs_redundant_mismatches == 0
            && self.type_a_fixpoint_violations == 0
            && self.type_b_fixpoint_violations == 0
            && self.orientation_violations == 0
            && self.order_violations == 0
            && self.termination_violations == 0
    }
}

/// Cofactor ledger of one increment: for each basis entry, polynomials
/// `h_1..h_m` over this increment's generators with `sum h_k g_k` equal to
/// the entry's polynomial.
#[derive(Debug, Clone)]
pub struct IncrementWitness {
    pub gens: Vec<Polynomial>,
    pub entries: Vec<WitnessEntry>,
}

#[derive(Debug, Clone)]
pub struct WitnessEntry {
    pub sig: MonSig,
    pub poly: Polynomial,
    pub cofactors: Vec<Polynomial>,
}

#[derive(Debug)]
pub struct IncrementOutput {
    /// The full labeled basis, zero and redundant entries included.
    pub entries: Vec<LabeledPoly>,
    pub witness: Option<IncrementWitness>,
}

/// Result of a whole incremental run.
#[derive(Debug)]
pub struct GbRun {
    pub basis: GroebnerBasis,
    pub stats: EngineStats,
    pub trace: Option<Vec<IncrementWitness>>,
}

struct Increment<'a> {
    ring: &'a Ring,
    strat: &'a StrategyConfig,
    opts: &'a EngineOptions,
    stats: &'a mut EngineStats,
    new_comp: u32,
    gens: Vec<Polynomial>,
    g: Vec<LabeledPoly>,
    /// Divisibility prefilters of the entries' leading monomials
    /// (`u64::MAX` for zero entries, which divide nothing).
    lm_masks: Vec<u64>,
    /// Divisibility prefilters of the entries' signature monomials.
    sig_masks: Vec<u64>,
    /// Cofactor vectors parallel to `g`; empty unless certify mode.
    cof: Vec<Vec<Polynomial>>,
    syz: SyzygySet,
    rules: RuleList,
    pending: Vec<CriticalPair>,
    seq: u64,
    last_processed: Option<MonSig>,
}

struct Reduced {
    poly: Polynomial,
    cofactors: Option<Vec<Polynomial>>,
}

/// Runs one increment of the signature engine and returns the full
/// labeled basis. The caller guarantees `old_basis` is a reduced Groebner
/// basis and `f_new` does not reduce to zero against it.
pub fn run_increment(
    ring: &Ring,
    old_basis: &[Polynomial],
    f_new: &Polynomial,
    strat: &StrategyConfig,
    opts: &EngineOptions,
    stats: &mut EngineStats,
) -> Result<IncrementOutput> {
    if f_new.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let new_comp = old_basis.len() as u32;
    let mut inc = Increment {
        ring,
        strat,
        opts,
        stats,
        new_comp,
        gens: Vec::new(),
        g: Vec::new(),
        lm_masks: Vec::new(),
        sig_masks: Vec::new(),
        cof: Vec::new(),
        syz: SyzygySet::from_leading_monomials(old_basis),
        rules: RuleList::new(),
        pending: Vec::new(),
        seq: 0,
        last_processed: None,
    };
    inc.setup(old_basis, f_new);
    inc.run()
}

impl<'a> Increment<'a> {
    fn setup(&mut self, old_basis: &[Polynomial], f_new: &Polynomial) {
        let n = self.ring.nvars();
        let total = old_basis.len() + 1;
        for (j, p) in old_basis.iter().enumerate() {
            debug_assert!(!p.is_zero() && p.lc() == 1);
            self.gens.push(p.clone());
            self.push_entry(
                LabeledPoly {
                    sig: MonSig::generator(j as u32, n),
                    poly: p.clone(),
                    age: j,
                    redundant: false,
                    syzygy: false,
                },
                self.opts.certify.then(|| unit_cofactors(self.ring, total, j)),
            );
        }
        let f_monic = self.ring.make_monic(f_new);
        self.gens.push(f_monic.clone());
        self.push_entry(
            LabeledPoly {
                sig: MonSig::generator(self.new_comp, n),
                poly: f_monic,
                age: old_basis.len(),
                redundant: false,
                syzygy: false,
            },
            self.opts
                .certify
                .then(|| unit_cofactors(self.ring, total, old_basis.len())),
        );
        let new_idx = self.g.len() - 1;
        for j in 0..new_idx {
            if let Some(pair) = self.make_pair(new_idx, j) {
                self.pending.push(pair);
            }
        }
    }

    fn push_entry(&mut self, entry: LabeledPoly, cofactors: Option<Vec<Polynomial>>) {
        self.lm_masks.push(if entry.poly.is_zero() {
            u64::MAX
        } else {
            entry.poly.lm().divmask()
        });
        self.sig_masks.push(entry.sig.mono.divmask());
        self.g.push(entry);
        if let Some(c) = cofactors {
            self.cof.push(c);
        }
    }

    fn run(mut self) -> Result<IncrementOutput> {
        while !self.pending.is_empty() {
            // Prune the pending queue with the syzygy criterion, then pull
            // out the stage of minimal signature degree.
            let before = self.pending.len();
            let syz = &self.syz;
            self.pending
                .retain(|p| !syz.contains_divisor_of_masked(&p.sig.mono, p.sig_mask));
            self.stats.syz_pruned_pending += (before - self.pending.len()) as u64;
            if self.pending.is_empty() {
                break;
            }
            let d = self
                .pending
                .iter()
                .map(|p| p.sig.mono.degree())
                .min()
                .expect("nonempty");
            let mut stage: Vec<CriticalPair> = Vec::new();
            let mut rest: Vec<CriticalPair> = Vec::new();
            for p in self.pending.drain(..) {
                if p.sig.mono.degree() == d {
                    stage.push(p);
                } else {
                    rest.push(p);
                }
            }
            self.pending = rest;

            while !stage.is_empty() {
                self.prune_stage(&mut stage);
                if stage.is_empty() {
                    break;
                }
                let k = self.pick_minimal(&stage);
                let pair = stage.remove(k);
                self.reduce_pair(pair, &mut stage, d)?;
            }
        }

        let witness = self.opts.certify.then(|| IncrementWitness {
            gens: self.gens.clone(),
            entries: self
                .g
                .iter()
                .zip(self.cof.iter())
                .map(|(e, c)| WitnessEntry {
                    sig: e.sig.clone(),
                    poly: e.poly.clone(),
                    cofactors: c.clone(),
                })
                .collect(),
        });
        Ok(IncrementOutput {
            entries: self.g,
            witness,
        })
    }

    /// Creates the oriented pair of entries `a` and `b`, or `None` when
    /// their multiplied signatures are level.
    fn make_pair(&mut self, a: usize, b: usize) -> Option<CriticalPair> {
        let (pa, pb) = (&self.g[a], &self.g[b]);
        debug_assert!(!pa.poly.is_zero() && !pb.poly.is_zero());
        let lcm = pa.poly.lm().lcm(pb.poly.lm());
        let u = lcm.quot(pa.poly.lm());
        let v = lcm.quot(pb.poly.lm());
        let sa = pa.sig.mul_mono(&u);
        let sb = pb.sig.mul_mono(&v);
        let order = self.ring.order();
        let pair = match sa.cmp(&sb, order) {
            Ordering::Equal => return None,
            Ordering::Greater => CriticalPair {
                sig_mask: sa.mono.divmask(),
                sig: sa,
                pos: a,
                neg: b,
                lcm,
                u,
                v,
                seq: self.seq,
                spol_lm: None,
                spol_terms: None,
            },
            Ordering::Less => CriticalPair {
                sig_mask: sb.mono.divmask(),
                sig: sb,
                pos: b,
                neg: a,
                lcm,
                u: v,
                v: u,
                seq: self.seq,
                spol_lm: None,
                spol_terms: None,
            },
        };
        self.seq += 1;
        if self.opts.checks {
            let ps = self.g[pair.pos].sig.mul_mono(&pair.u);
            let ns = self.g[pair.neg].sig.mul_mono(&pair.v);
            if ps.cmp(&ns, order) != Ordering::Greater {
                self.stats.orientation_violations += 1;
            }
        }
        Some(pair)
    }

    /// Index of the minimal stage pair: ascending signature, ties by
    /// ascending lcm, then ascending generator ages.
    fn pick_minimal(&self, stage: &[CriticalPair]) -> usize {
        let order = self.ring.order();
        let mut best = 0;
        for i in 1..stage.len() {
            let a = &stage[i];
            let b = &stage[best];
            let c = a
                .sig
                .cmp(&b.sig, order)
                .then_with(|| self.ring.mono_cmp(&a.lcm, &b.lcm))
                .then_with(|| self.g[a.pos].age.cmp(&self.g[b.pos].age))
                .then_with(|| self.g[a.neg].age.cmp(&self.g[b.neg].age));
            if c == Ordering::Less {
                best = i;
            }
        }
        best
    }

    fn prune_stage(&mut self, stage: &mut Vec<CriticalPair>) {
        let before = stage.len();
        let syz = &self.syz;
        stage.retain(|p| !syz.contains_divisor_of_masked(&p.sig.mono, p.sig_mask));
        self.stats.syz_pruned_stage += (before - stage.len()) as u64;

        let before = stage.len();
        match self.strat.rewrite {
            RewriteRule::None => {}
            RewriteRule::F5Rules => {
                let rules = &self.rules;
                let g = &self.g;
                stage.retain(|p| !rules.rewrites(&p.sig.mono, p.sig_mask, g[p.pos].age));
            }
            RewriteRule::ArriMinLm => self.prune_arri(stage),
            RewriteRule::GgvRecent => self.prune_ggv_recent(stage),
            RewriteRule::MinMonomials => prune_keep_first(stage),
        }
        self.stats.rewrite_pruned += (before - stage.len()) as u64;
    }

    /// Arri's rewriting: discard a pair when an entry or another queued
    /// pair of dividing signature reaches a strictly smaller leading
    /// monomial. Verdicts are evaluated simultaneously against the
    /// pre-prune stage. Pairs still pending have strictly larger signature
    /// degree, so they can never divide a stage signature and need no scan.
    fn prune_arri(&mut self, stage: &mut Vec<CriticalPair>) {
        for k in 0..stage.len() {
            if stage[k].spol_lm.is_none() {
                let sp = self.pair_spol(&stage[k]);
                stage[k].spol_lm = Some(if sp.is_zero() {
                    None
                } else {
                    Some(sp.lm().clone())
                });
                stage[k].spol_terms = Some(sp.num_terms());
            }
        }
        let keep: Vec<bool> = (0..stage.len())
            .map(|i| {
                let sig_i = &stage[i].sig.mono;
                let mask_i = stage[i].sig_mask;
                let lm_i = match stage[i].spol_lm.as_ref().unwrap() {
                    // A zero S-polynomial cannot be beaten; it is the
                    // syzygy criterion's job once it reduces.
                    None => return true,
                    Some(lm) => lm,
                };
                let order = self.ring.order();
                let by_entry = self.g.iter().enumerate().any(|(idx, e)| {
                    e.sig.index == self.new_comp
                        && !e.poly.is_zero()
                        && crate::monomial::mask_may_divide(self.sig_masks[idx], mask_i)
                        && e.sig.mono.divides(sig_i)
                        && order.cmp_shifted(sig_i, &e.sig.mono, e.poly.lm(), lm_i)
                            == Ordering::Less
                });
                if by_entry {
                    return false;
                }
                let by_pair = stage.iter().enumerate().any(|(j, o)| {
                    j != i
                        && crate::monomial::mask_may_divide(o.sig_mask, mask_i)
                        && o.sig.mono.divides(sig_i)
                        && match o.spol_lm.as_ref().unwrap() {
                            None => true,
                            Some(lm_j) => {
                                order.cmp_shifted(sig_i, &o.sig.mono, lm_j, lm_i)
                                    == Ordering::Less
                            }
                        }
                });
                !by_pair
            })
            .collect();
        let mut it = keep.iter();
        stage.retain(|_| *it.next().unwrap());
    }

    /// Keep one pair per signature: the most recently computed generators
    /// win (pos age first, then neg age).
    fn prune_ggv_recent(&mut self, stage: &mut Vec<CriticalPair>) {
        let keep: Vec<bool> = (0..stage.len())
            .map(|i| {
                let ki = (self.g[stage[i].pos].age, self.g[stage[i].neg].age);
                !stage.iter().enumerate().any(|(j, o)| {
                    j != i && o.sig.mono == stage[i].sig.mono && {
                        let kj = (self.g[o.pos].age, self.g[o.neg].age);
                        kj > ki
                    }
                })
            })
            .collect();
        let mut it = keep.iter();
        stage.retain(|_| *it.next().unwrap());
    }

    fn pair_spol(&self, pair: &CriticalPair) -> Polynomial {
        let p = &self.g[pair.pos].poly;
        let q = &self.g[pair.neg].poly;
        let up = self.ring.mul_mono(&pair.u, p);
        let c = self.ring.field().neg(self.ring.field().div(p.lc(), q.lc()));
        self.ring.add_scaled(&up, c, &pair.v, q)
    }

    fn pair_spol_cofactors(&self, pair: &CriticalPair) -> Vec<Polynomial> {
        let p = &self.g[pair.pos].poly;
        let q = &self.g[pair.neg].poly;
        let c = self.ring.field().neg(self.ring.field().div(p.lc(), q.lc()));
        self.cof[pair.pos]
            .iter()
            .zip(self.cof[pair.neg].iter())
            .map(|(hp, hq)| {
                let up = self.ring.mul_mono(&pair.u, hp);
                self.ring.add_scaled(&up, c, &pair.v, hq)
            })
            .collect()
    }

    fn reduce_pair(
        &mut self,
        pair: CriticalPair,
        stage: &mut Vec<CriticalPair>,
        d: u32,
    ) -> Result<()> {
        if let Some(limit) = self.opts.pair_limit {
            if self.stats.pairs_reduced >= limit {
                return Err(Error::PairLimitExceeded(limit));
            }
        }
        if let Some(deadline) = self.opts.deadline {
            if Instant::now() >= deadline {
                return Err(Error::Timeout);
            }
        }
        self.stats.pairs_reduced += 1;
        if self.opts.checks {
            if let Some(last) = &self.last_processed {
                if last.cmp(&pair.sig, self.ring.order()) == Ordering::Greater {
                    self.stats.order_violations += 1;
                }
            }
        }
        self.last_processed = Some(pair.sig.clone());

        let spol = self.pair_spol(&pair);
        let mut to_reduce = spol;
        let mut cofactors = self
            .opts
            .certify
            .then(|| self.pair_spol_cofactors(&pair));

        if self.strat.rewrite == RewriteRule::MinMonomials {
            if let Some((idx, t)) = self.minmon_substitute(&pair, to_reduce.num_terms()) {
                self.stats.mm_substitutions += 1;
                to_reduce = self.ring.mul_mono(&t, &self.g[idx].poly);
                if self.opts.certify {
                    cofactors = Some(
                        self.cof[idx]
                            .iter()
                            .map(|h| self.ring.mul_mono(&t, h))
                            .collect(),
                    );
                }
            }
        }

        let sig = pair.sig.clone();
        let reduced = self.sig_reduce(&sig, to_reduce, cofactors)?;
        let r = reduced.poly;

        if r.is_zero() {
            self.stats.zero_reductions += 1;
            if self.strat.syz_from_zero {
                self.syz.insert(sig.mono.clone());
            }
        }

        let mut redundant = false;
        if !r.is_zero() && self.strat.redundancy_check {
            let eq_form = self.is_sig_redundant_eq(&sig, r.lm());
            if self.opts.checks {
                self.stats.redundancy_calls += 1;
                let div_form = self.is_sig_redundant_div(&sig, r.lm());
                if eq_form != div_form {
                    self.stats.redundancy_eq_div_mismatches += 1;
                }
            }
            redundant = match self.strat.gate {
                PairGate::SigRedundant => eq_form,
                PairGate::SuperTopReducible => {
                    let gs = self.super_top_reducible(&sig, &r);
                    if self.opts.checks && gs != eq_form {
                        self.stats.gs_vs_redundant_mismatches += 1;
                    }
                    gs
                }
            };
        }

        if self.opts.checks && !r.is_zero() {
            self.check_fixpoint(&sig, &r);
            if self.strat.redundancy_check && !redundant && self.is_sig_redundant_div(&sig, r.lm())
            {
                self.stats.termination_violations += 1;
            }
        }

        self.rules.push(Rule {
            mono: sig.mono.clone(),
            age: self.g.len(),
            redundant,
            zero: r.is_zero(),
        });

        let new_idx = self.g.len();
        self.stats.entries_appended += 1;
        if redundant {
            self.stats.redundant_entries += 1;
        } else if !r.is_zero() {
            self.stats.basis_contributions += 1;
        }
        let is_zero = r.is_zero();
        let generate = !is_zero && !redundant;
        let cof = self
            .opts
            .certify
            .then(|| reduced.cofactors.expect("certify mode tracks cofactors"));
        self.push_entry(
            LabeledPoly {
                sig,
                poly: r,
                age: new_idx,
                redundant,
                syzygy: is_zero,
            },
            cof,
        );

        if generate {
            for j in 0..new_idx {
                if self.g[j].poly.is_zero() || self.g[j].redundant {
                    continue;
                }
                if let Some(np) = self.make_pair(new_idx, j) {
                    if np.sig.mono.degree() == d {
                        stage.push(np);
                    } else {
                        debug_assert!(np.sig.mono.degree() > d);
                        self.pending.push(np);
                    }
                }
            }
        }
        Ok(())
    }

    /// Fewest-monomials substitution: a nonzero current-component entry
    /// whose signature reaches the pair's by a monomial factor and whose
    /// polynomial has strictly fewer terms than the S-polynomial.
    fn minmon_substitute(
        &self,
        pair: &CriticalPair,
        spol_terms: usize,
    ) -> Option<(usize, Monomial)> {
        let mut best: Option<(usize, usize, usize, Monomial)> = None;
        for (idx, e) in self.g.iter().enumerate() {
            if e.sig.index != self.new_comp || e.poly.is_zero() {
                continue;
            }
            if !e.sig.mono.divides(&pair.sig.mono) {
                continue;
            }
            let nt = e.poly.num_terms();
            if nt >= spol_terms {
                continue;
            }
            let t = pair.sig.mono.quot(&e.sig.mono);
            if best
                .as_ref()
                .map_or(true, |(bn, ba, _, _)| (nt, e.age) < (*bn, *ba))
            {
                best = Some((nt, e.age, idx, t));
            }
        }
        best.map(|(_, _, idx, t)| (idx, t))
    }

    /// Signature-safe reduction of `(sig, poly)` modulo the current basis.
    ///
    /// Reducers with strictly smaller multiplied signature are always
    /// allowed; level reducers with a differing coefficient ratio only in
    /// complete mode, in which case the working signature coefficient is
    /// tracked and the result rescaled to keep the signature monic. Among
    /// eligible reducers the one with the smallest multiplied signature
    /// wins, ties to the smallest age.
    fn sig_reduce(
        &mut self,
        sig: &MonSig,
        poly: Polynomial,
        cofactors: Option<Vec<Polynomial>>,
    ) -> Result<Reduced> {
        let order = self.ring.order();
        let field = *self.ring.field();
        let complete = self.strat.reduction == ReductionMode::Complete;
        let mut r = poly;
        let mut cof = cofactors;
        let mut label_c: Coeff = 1;
        let mut steps_since_check = 0u32;

        while !r.is_zero() {
            let target = r.lm();
            let target_mask = target.divmask();
            // Best eligible reducer: smallest multiplied signature, ties
            // to the smallest age. Level reducers (complete mode only)
            // carry the largest eligible signature, so they lose to any
            // strict reducer automatically.
            let mut best: Option<(usize, bool)> = None;
            for (idx, e) in self.g.iter().enumerate() {
                if !crate::monomial::mask_may_divide(self.lm_masks[idx], target_mask)
                    || e.poly.is_zero()
                    || !e.poly.lm().divides(target)
                {
                    continue;
                }
                let rel = e
                    .sig
                    .index
                    .cmp(&sig.index)
                    .then_with(|| order.cmp_shifted(target, e.poly.lm(), &e.sig.mono, &sig.mono));
                let level = match rel {
                    Ordering::Less => false,
                    Ordering::Equal => {
                        if !complete || field.div(r.lc(), e.poly.lc()) == label_c {
                            continue;
                        }
                        true
                    }
                    Ordering::Greater => continue,
                };
                let better = match best {
                    None => true,
                    Some((bidx, _)) => {
                        let be = &self.g[bidx];
                        match e.sig.index.cmp(&be.sig.index).then_with(|| {
                            order.cmp_shifted_pair(
                                e.poly.lm(),
                                &e.sig.mono,
                                be.poly.lm(),
                                &be.sig.mono,
                            )
                        }) {
                            Ordering::Less => true,
                            Ordering::Greater => false,
                            Ordering::Equal => e.age < be.age,
                        }
                    }
                };
                if better {
                    best = Some((idx, level));
                }
            }
            let Some((idx, level)) = best else {
                break;
            };
            let t = r.lm().quot(self.g[idx].poly.lm());
            let a = field.div(r.lc(), self.g[idx].poly.lc());
            r = self.ring.add_scaled(&r, field.neg(a), &t, &self.g[idx].poly);
            if let Some(cof) = cof.as_mut() {
                for (h, hg) in cof.iter_mut().zip(self.cof[idx].iter()) {
                    *h = self.ring.add_scaled(h, field.neg(a), &t, hg);
                }
            }
            if level {
                label_c = field.sub(label_c, a);
                debug_assert_ne!(label_c, 0);
            }
            self.stats.reduction_steps += 1;
            steps_since_check += 1;
            if steps_since_check >= 4096 {
                steps_since_check = 0;
                if let Some(deadline) = self.opts.deadline {
                    if Instant::now() >= deadline {
                        return Err(Error::Timeout);
                    }
                }
            }
        }

        if label_c != 1 {
            let inv = field.inv(label_c);
            r = self.ring.scale(&r, inv);
            if let Some(cof) = cof.as_mut() {
                for h in cof.iter_mut() {
                    *h = self.ring.scale(h, inv);
                }
            }
        }

        if self.strat.tail_reduce && !r.is_zero() {
            self.tail_reduce(sig, &mut r, &mut cof);
        }

        Ok(Reduced { poly: r, cofactors: cof })
    }

    /// Signature-safe tail reduction: strictly smaller multiplied
    /// signatures only, so the leading term and the signature are
    /// untouched.
    fn tail_reduce(&mut self, sig: &MonSig, r: &mut Polynomial, cof: &mut Option<Vec<Polynomial>>) {
        let order = self.ring.order();
        let field = *self.ring.field();
        let mut i = 1;
        while i < r.num_terms() {
            let target = r.terms()[i].mono.clone();
            let target_mask = target.divmask();
            let coeff = r.terms()[i].coeff;
            let mut best: Option<usize> = None;
            for (idx, e) in self.g.iter().enumerate() {
                if !crate::monomial::mask_may_divide(self.lm_masks[idx], target_mask)
                    || e.poly.is_zero()
                    || !e.poly.lm().divides(&target)
                {
                    continue;
                }
                let rel = e
                    .sig
                    .index
                    .cmp(&sig.index)
                    .then_with(|| order.cmp_shifted(&target, e.poly.lm(), &e.sig.mono, &sig.mono));
                if rel != Ordering::Less {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(bidx) => {
                        let be = &self.g[bidx];
                        match e.sig.index.cmp(&be.sig.index).then_with(|| {
                            order.cmp_shifted_pair(
                                e.poly.lm(),
                                &e.sig.mono,
                                be.poly.lm(),
                                &be.sig.mono,
                            )
                        }) {
                            Ordering::Less => true,
                            Ordering::Greater => false,
                            Ordering::Equal => e.age < be.age,
                        }
                    }
                };
                if better {
                    best = Some(idx);
                }
            }
            match best {
                None => i += 1,
                Some(idx) => {
                    let t = target.quot(self.g[idx].poly.lm());
                    let a = field.div(coeff, self.g[idx].poly.lc());
                    *r = self.ring.add_scaled(r, field.neg(a), &t, &self.g[idx].poly);
                    if let Some(cof) = cof.as_mut() {
                        for (h, hg) in cof.iter_mut().zip(self.cof[idx].iter()) {
                            *h = self.ring.add_scaled(h, field.neg(a), &t, hg);
                        }
                    }
                    self.stats.reduction_steps += 1;
                }
            }
        }
    }

    /// Equality form of the redundancy test: some nonzero entry of the
    /// current component reaches both the signature and the leading
    /// monomial by one monomial factor.
    fn is_sig_redundant_eq(&self, sig: &MonSig, lm: &Monomial) -> bool {
        let sig_mask = sig.mono.divmask();
        self.g.iter().enumerate().any(|(idx, e)| {
            e.sig.index == self.new_comp
                && !e.poly.is_zero()
                && crate::monomial::mask_may_divide(self.sig_masks[idx], sig_mask)
                && e.sig.mono.divides(&sig.mono)
                && {
                    let t = sig.mono.quot(&e.sig.mono);
                    t.degree() + e.poly.lm().degree() == lm.degree()
                        && e.poly.lm().mul(&t) == *lm
                }
        })
    }

    /// Divisibility form of the redundancy definition.
    fn is_sig_redundant_div(&self, sig: &MonSig, lm: &Monomial) -> bool {
        let sig_mask = sig.mono.divmask();
        let lm_mask = lm.divmask();
        self.g.iter().enumerate().any(|(idx, e)| {
            e.sig.index == self.new_comp
                && !e.poly.is_zero()
                && crate::monomial::mask_may_divide(self.sig_masks[idx], sig_mask)
                && crate::monomial::mask_may_divide(self.lm_masks[idx], lm_mask)
                && e.sig.mono.divides(&sig.mono)
                && e.poly.lm().divides(lm)
        })
    }

    /// Super top-reducibility: at least one top-reducer exists and every
    /// top-reducer matches with level multiplied signature and equal
    /// leading coefficient (entries carry monic signatures, so the
    /// proportionality factor is forced to one).
    fn super_top_reducible(&self, sig: &MonSig, r: &Polynomial) -> bool {
        let target_mask = r.lm().divmask();
        let mut any = false;
        for (idx, e) in self.g.iter().enumerate() {
            if !crate::monomial::mask_may_divide(self.lm_masks[idx], target_mask)
                || e.poly.is_zero()
                || !e.poly.lm().divides(r.lm())
            {
                continue;
            }
            any = true;
            let level = e.sig.index == sig.index
                && self
                    .ring
                    .order()
                    .cmp_shifted(r.lm(), e.poly.lm(), &e.sig.mono, &sig.mono)
                    == Ordering::Equal;
            if !level || e.poly.lc() != r.lc() {
                return false;
            }
        }
        any
    }

    /// Post-reduction fixpoint verification: no strictly-smaller-signature
    /// top-reducer may remain, and no level reducer with a differing
    /// leading coefficient (the latter must also be absent at semi-complete
    /// fixpoints).
    fn check_fixpoint(&mut self, sig: &MonSig, r: &Polynomial) {
        let order = self.ring.order();
        let mut type_a = 0;
        let mut type_b = 0;
        for e in &self.g {
            if e.poly.is_zero() || !e.poly.lm().divides(r.lm()) {
                continue;
            }
            let t = r.lm().quot(e.poly.lm());
            let ms = e.sig.mul_mono(&t);
            match ms.cmp(sig, order) {
                Ordering::Less => type_a += 1,
                Ordering::Equal => {
                    if e.poly.lc() != r.lc() {
                        type_b += 1;
                    }
                }
                Ordering::Greater => {}
            }
        }
        self.stats.type_a_fixpoint_violations += type_a;
        self.stats.type_b_fixpoint_violations += type_b;
    }
}

/// Keep the first-created pair per signature (the MinMon strategy's free
/// choice among level pairs).
fn prune_keep_first(stage: &mut Vec<CriticalPair>) {
    let snapshot: Vec<(Monomial, u64)> =
        stage.iter().map(|p| (p.sig.mono.clone(), p.seq)).collect();
    stage.retain(|p| {
        !snapshot
            .iter()
            .any(|(m, seq)| *m == p.sig.mono && *seq < p.seq)
    });
}

fn unit_cofactors(ring: &Ring, len: usize, j: usize) -> Vec<Polynomial> {
    let one = ring.poly_from_terms(vec![(Monomial::one(ring.nvars()), 1)]);
    (0..len)
        .map(|k| if k == j { one.clone() } else { Polynomial::zero() })
        .collect()
}

/// One engine increment with the contract checks: rejects a new generator
/// that already lies in the ideal, and returns only the entries that make
/// up the extended basis (nonzero, not signature-redundant).
pub fn basis_step(
    ring: &Ring,
    old_basis: &[Polynomial],
    f_new: &Polynomial,
    strat: &StrategyConfig,
    opts: &EngineOptions,
    stats: &mut EngineStats,
) -> Result<Vec<LabeledPoly>> {
    if f_new.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !old_basis.is_empty() && ring.normal_form(f_new, old_basis).is_zero() {
        return Err(Error::MemberOfIdeal);
    }
    let out = run_increment(ring, old_basis, f_new, strat, opts, stats)?;
    Ok(out
        .entries
        .into_iter()
        .filter(|e| !e.poly.is_zero() && !e.redundant)
        .collect())
}

/// Incremental Groebner basis computation: one engine increment per
/// generator, interreducing in between, skipping generators that already
/// reduce to zero against the basis built so far.
pub fn incremental_gb(
    ring: &Ring,
    gens: &[Polynomial],
    strat: &StrategyConfig,
    opts: &EngineOptions,
) -> Result<GbRun> {
    let mut stats = EngineStats::default();
    let (basis, trace) = incremental_gb_into(ring, gens, strat, opts, &mut stats)?;
    Ok(GbRun {
        basis,
        stats,
        trace,
    })
}

/// As [`incremental_gb`], accumulating into caller-owned statistics so an
/// aborted run (timeout, pair ceiling) still reports its partial counts.
pub fn incremental_gb_into(
    ring: &Ring,
    gens: &[Polynomial],
    strat: &StrategyConfig,
    opts: &EngineOptions,
    stats: &mut EngineStats,
) -> Result<(GroebnerBasis, Option<Vec<IncrementWitness>>)> {
    if gens.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut trace = if opts.certify { Some(Vec::new()) } else { None };
    let mut basis: Vec<Polynomial> = Vec::new();

    for f in gens {
        if f.is_zero() || (!basis.is_empty() && ring.normal_form(f, &basis).is_zero()) {
            stats.skipped_inputs += 1;
            continue;
        }
        let out = run_increment(ring, &basis, f, strat, opts, stats)?;
        stats.increments += 1;
        let kept: Vec<Polynomial> = out
            .entries
            .iter()
            .filter(|e| !e.poly.is_zero() && !e.redundant)
            .map(|e| e.poly.clone())
            .collect();
        basis = interreduce(ring, &kept).polys;
        if let (Some(trace), Some(w)) = (trace.as_mut(), out.witness) {
            trace.push(w);
        }
    }

    if basis.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok((GroebnerBasis { polys: basis }, trace))
}

/// Verifies a certify-mode trace: for every nonzero entry of every
/// increment, the cofactor combination reproduces the polynomial, the
/// cofactor at the signature's component is nonzero with the signature's
/// monomial as leading monomial, and all higher components vanish.
pub fn certify(ring: &Ring, trace: &[IncrementWitness]) -> bool {
    for w in trace {
        for entry in &w.entries {
            if entry.poly.is_zero() {
                continue;
            }
            if entry.cofactors.len() != w.gens.len() {
                return false;
            }
            let mut sum = Polynomial::zero();
            for (h, g) in entry.cofactors.iter().zip(w.gens.iter()) {
                sum = ring.add(&sum, &ring.mul(h, g));
            }
            if sum != entry.poly {
                return false;
            }
            let j = entry.sig.index as usize;
            let hj = &entry.cofactors[j];
            if hj.is_zero() || hj.lm() != &entry.sig.mono {
                return false;
            }
            if entry.cofactors[j + 1..].iter().any(|h| !h.is_zero()) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::MonomialOrder;
    use crate::oracle;

    fn ring2() -> Ring {
        Ring::new(
            PrimeField::new(32003).unwrap(),
            vec!["x".into(), "y".into()],
            MonomialOrder::DegRevLex,
        )
    }

    fn p(ring: &Ring, terms: &[(i64, &[u16])]) -> Polynomial {
        ring.poly_from_terms(
            terms
                .iter()
                .map(|&(c, e)| (Monomial::new(e), ring.field().from_i64(c)))
                .collect(),
        )
    }

    fn opts_checked() -> EngineOptions {
        EngineOptions {
            checks: true,
            ..Default::default()
        }
    }

    #[test]
    fn first_increment_is_trivial() {
        let r = ring2();
        let f = p(&r, &[(2, &[2, 0]), (1, &[0, 1])]);
        let mut stats = EngineStats::default();
        let out = basis_step(&r, &[], &f, &StrategyConfig::f5(), &opts_checked(), &mut stats)
            .unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(stats.pairs_reduced, 0);
        assert_eq!(out[0].poly.lc(), 1, "increment generators are made monic");
    }

    #[test]
    fn toy_second_increment_matches_oracle() {
        let r = ring2();
        let f1 = p(&r, &[(1, &[2, 0]), (-1, &[0, 1])]);
        let f2 = p(&r, &[(1, &[1, 1]), (-1, &[0, 0])]);
        for strat in StrategyConfig::all_presets() {
            let mut stats = EngineStats::default();
            let entries = basis_step(
                &r,
                &[f1.clone()],
                &f2,
                &strat,
                &opts_checked(),
                &mut stats,
            )
            .unwrap();
            let polys: Vec<Polynomial> = entries.iter().map(|e| e.poly.clone()).collect();
            let got = oracle::interreduce(&r, &polys);
            let want = oracle::buchberger(&r, &[f1.clone(), f2.clone()]).unwrap();
            assert!(oracle::ideals_equal(&r, &got, &want).unwrap(), "{}", strat.name());
            assert!(stats.clean(), "{}: {:?}", strat.name(), stats);
        }
    }

    #[test]
    fn member_of_ideal_is_rejected() {
        let r = ring2();
        let f1 = p(&r, &[(1, &[1, 0])]);
        let f2 = p(&r, &[(1, &[2, 0])]); // x^2 = x * x
        let mut stats = EngineStats::default();
        let err = basis_step(
            &r,
            &[f1],
            &f2,
            &StrategyConfig::arri(),
            &EngineOptions::default(),
            &mut stats,
        )
        .unwrap_err();
        assert!(matches!(err, Error::MemberOfIdeal));
    }

    #[test]
    fn incremental_skips_dependent_generators() {
        let r = ring2();
        let f1 = p(&r, &[(1, &[1, 0]), (1, &[0, 1])]); // x + y
        let f2 = p(&r, &[(1, &[2, 0]), (1, &[1, 1])]); // x*(x+y)
        let run = incremental_gb(
            &r,
            &[f1.clone(), f2],
            &StrategyConfig::f5(),
            &EngineOptions::default(),
        )
        .unwrap();
        assert_eq!(run.stats.skipped_inputs, 1);
        let want = oracle::buchberger(&r, &[f1]).unwrap();
        assert!(oracle::ideals_equal(&r, &run.basis, &want).unwrap());
    }

    #[test]
    fn constant_input_gives_unit_ideal() {
        let r = ring2();
        let run = incremental_gb(
            &r,
            &[p(&r, &[(5, &[0, 0])])],
            &StrategyConfig::ggv(),
            &EngineOptions::default(),
        )
        .unwrap();
        assert_eq!(run.basis.polys, vec![p(&r, &[(1, &[0, 0])])]);
    }

    #[test]
    fn empty_input_is_an_error() {
        let r = ring2();
        assert!(matches!(
            incremental_gb(&r, &[], &StrategyConfig::f5(), &EngineOptions::default()),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn certify_single_increment_and_corruption() {
        let r = ring2();
        let f1 = p(&r, &[(1, &[2, 0]), (-1, &[0, 1])]);
        let f2 = p(&r, &[(1, &[1, 1]), (-1, &[0, 0])]);
        let opts = EngineOptions {
            certify: true,
            ..Default::default()
        };
        let run = incremental_gb(&r, &[f1, f2], &StrategyConfig::arri(), &opts).unwrap();
        let mut trace = run.trace.unwrap();
        assert!(certify(&r, &trace));
        // Corrupt one signature: detection is the negative control.
        let entry = trace
            .last_mut()
            .unwrap()
            .entries
            .iter_mut()
            .find(|e| !e.poly.is_zero())
            .unwrap();
        entry.sig.mono = entry.sig.mono.mul(&Monomial::var(0, 2));
        assert!(!certify(&r, &trace));
    }

    #[test]
    fn pair_limit_aborts() {
        let r = ring2();
        let f1 = p(&r, &[(1, &[2, 0]), (-1, &[0, 1])]);
        let f2 = p(&r, &[(1, &[1, 1]), (-1, &[0, 0])]);
        let opts = EngineOptions {
            pair_limit: Some(0),
            ..Default::default()
        };
        let err = incremental_gb(&r, &[f1, f2], &StrategyConfig::f5(), &opts).unwrap_err();
        assert!(matches!(err, Error::PairLimitExceeded(0)));
    }
}
