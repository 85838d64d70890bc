//! Strategy presets for the signature engine.
//!
//! Every strategy is a configuration of the same generic engine: a
//! reduction mode, a rule for feeding the syzygy set, a rewriting rule for
//! pruning queued pairs, and a gate deciding which finished reductions may
//! generate new pairs. The presets are immutable apart from the two
//! fidelity toggles exposed on the CLI (`--no-redundancy-check` and
//! `--tail-reduce`).

use crate::monomial::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    F5,
    F5Prime,
    Ggv,
    Arri,
    MinMon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionMode {
    /// Reduce only by strictly smaller multiplied signatures.
    SemiComplete,
    /// Additionally allow level reducers with a differing leading
    /// coefficient; the result is rescaled so its signature stays monic.
    Complete,
}

/// How queued pairs of the current stage are pruned beyond the syzygy
/// criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteRule {
    /// No rewriting (bare engine).
    None,
    /// Discard a pair when a later, non-redundant rule's signature
    /// monomial divides the pair's.
    F5Rules,
    /// Discard a pair when a basis entry or queued pair of dividing
    /// signature reaches a strictly smaller leading monomial.
    ArriMinLm,
    /// Keep a single pair per signature: the one with the most recently
    /// computed generators.
    GgvRecent,
    /// Keep the first-created pair per signature and substitute a
    /// fewer-monomial basis entry for the S-polynomial when one exists.
    MinMonomials,
}

/// What decides whether a finished, nonzero reduction may generate pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairGate {
    /// The signature-redundancy test in its equality form.
    SigRedundant,
    /// Super top-reducibility: every top-reducer matches with level
    /// multiplied signature and proportional leading coefficients.
    SuperTopReducible,
}

#[derive(Debug, Clone)]
pub struct StrategyConfig {
    pub kind: StrategyKind,
    pub reduction: ReductionMode,
    /// Whether signatures of zero reductions join the syzygy set.
    pub syz_from_zero: bool,
    pub rewrite: RewriteRule,
    pub gate: PairGate,
    /// Fidelity toggle: with this off, nothing is flagged redundant and
    /// every nonzero reduction generates pairs. Termination is then only
    /// guarded by the pair ceiling.
    pub redundancy_check: bool,
    /// Signature-safe tail reduction after the top-reduction fixpoint.
    pub tail_reduce: bool,
}

impl StrategyConfig {
    pub fn f5() -> Self {
        StrategyConfig {
            kind: StrategyKind::F5,
            reduction: ReductionMode::SemiComplete,
            syz_from_zero: false,
            rewrite: RewriteRule::F5Rules,
            gate: PairGate::SigRedundant,
            redundancy_check: true,
            tail_reduce: false,
        }
    }

    /// F5 with the syzygy criterion extended by zero-reduction signatures.
    pub fn f5_prime() -> Self {
        StrategyConfig {
            kind: StrategyKind::F5Prime,
            syz_from_zero: true,
            ..Self::f5()
        }
    }

    pub fn ggv() -> Self {
        StrategyConfig {
            kind: StrategyKind::Ggv,
            reduction: ReductionMode::Complete,
            syz_from_zero: true,
            rewrite: RewriteRule::GgvRecent,
            gate: PairGate::SuperTopReducible,
            redundancy_check: true,
            tail_reduce: false,
        }
    }

    pub fn arri() -> Self {
        StrategyConfig {
            kind: StrategyKind::Arri,
            reduction: ReductionMode::SemiComplete,
            syz_from_zero: true,
            rewrite: RewriteRule::ArriMinLm,
            gate: PairGate::SigRedundant,
            redundancy_check: true,
            tail_reduce: false,
        }
    }

    /// Arri's strategy with the rewriting rule replaced by the
    /// fewest-monomials substitution.
    pub fn minmon() -> Self {
        StrategyConfig {
            kind: StrategyKind::MinMon,
            rewrite: RewriteRule::MinMonomials,
            ..Self::arri()
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "f5" => Some(Self::f5()),
            "f5p" | "f5prime" => Some(Self::f5_prime()),
            "ggv" => Some(Self::ggv()),
            "arri" => Some(Self::arri()),
            "minmon" => Some(Self::minmon()),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            StrategyKind::F5 => "f5",
            StrategyKind::F5Prime => "f5p",
            StrategyKind::Ggv => "ggv",
            StrategyKind::Arri => "arri",
            StrategyKind::MinMon => "minmon",
        }
    }

    pub fn all_presets() -> Vec<StrategyConfig> {
        vec![
            Self::f5(),
            Self::f5_prime(),
            Self::ggv(),
            Self::arri(),
            Self::minmon(),
        ]
    }
}

/// One recorded reduction result of the current component: its signature
/// monomial, the age of the basis entry it produced, and the flags the
/// rewriting rule consults.
#[derive(Debug, Clone)]
pub struct Rule {
    pub mono: Monomial,
    pub age: usize,
    pub redundant: bool,
    pub zero: bool,
}

/// Append-only list of rules, ordered by computation time.
#[derive(Debug, Clone, Default)]
pub struct RuleList {
    rules: Vec<Rule>,
    masks: Vec<u64>,
}

impl RuleList {
    pub fn new() -> Self {
        RuleList::default()
    }

    pub fn push(&mut self, rule: Rule) {
        debug_assert!(self.rules.last().map_or(true, |r| r.age < rule.age));
        self.masks.push(rule.mono.divmask());
        self.rules.push(rule);
    }

    /// True iff a later-added, non-redundant rule's signature monomial
    /// divides `sig_mono`, where "later" is relative to the age of the
    /// pair's signature-carrying generator.
    pub fn rewrites(&self, sig_mono: &Monomial, sig_mask: u64, pos_age: usize) -> bool {
        self.rules
            .iter()
            .zip(self.masks.iter())
            .rev()
            .take_while(|(r, _)| r.age > pos_age)
            .any(|(r, &m)| {
                !r.redundant
                    && crate::monomial::mask_may_divide(m, sig_mask)
                    && r.mono.divides(sig_mono)
            })
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_match_their_construction() {
        let f5 = StrategyConfig::f5();
        assert_eq!(f5.reduction, ReductionMode::SemiComplete);
        assert!(!f5.syz_from_zero);
        let ggv = StrategyConfig::ggv();
        assert_eq!(ggv.reduction, ReductionMode::Complete);
        assert_eq!(ggv.gate, PairGate::SuperTopReducible);
        let arri = StrategyConfig::arri();
        assert!(arri.syz_from_zero);
        assert_eq!(StrategyConfig::minmon().rewrite, RewriteRule::MinMonomials);
        assert!(StrategyConfig::by_name("f5p").is_some());
        assert!(StrategyConfig::by_name("nope").is_none());
    }

    #[test]
    fn rule_list_rewriting() {
        let sig = Monomial::new(&[2, 1]);
        let mask = sig.divmask();
        let mut rules = RuleList::new();
        // Only rule is the pair's own generator: nothing later, no rewrite.
        rules.push(Rule {
            mono: Monomial::new(&[1, 1]),
            age: 3,
            redundant: false,
            zero: false,
        });
        assert!(!rules.rewrites(&sig, mask, 3));
        // A later rule with monomial y divides x^2 y.
        rules.push(Rule {
            mono: Monomial::new(&[0, 1]),
            age: 5,
            redundant: false,
            zero: false,
        });
        assert!(rules.rewrites(&sig, mask, 3));
        // Redundant rules do not rewrite.
        let mut rules = RuleList::new();
        rules.push(Rule {
            mono: Monomial::new(&[0, 1]),
            age: 5,
            redundant: true,
            zero: false,
        });
        assert!(!rules.rewrites(&sig, mask, 3));
    }
}
