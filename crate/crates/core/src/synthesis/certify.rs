use serde::Serialize;

use super::{verify_value_one, AlternateBase, ValueOneReport};
use crate::numerics::{alpha_root, IntervalJson};
use crate::words::{check_parry, ExpansionList, Mode, ParryReport};

/// Which sufficient condition, if any, makes the base unique.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Uniqueness {
    /// Every entry is ultimately periodic.
    UniqueByUP,
    /// Every entry starts with a digit at least 2.
    UniqueByLeadDigit,
    /// Every `β_i` exceeds the root in `[1, 2)` of `X^p − X^{p−1} − ⋯ − 1`.
    UniqueByAlpha,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    /// The entry is `t_i`, the greedy expansion of 1.
    Greedy,
    /// The entry is `d_i`, the quasi-greedy expansion of 1.
    QuasiGreedy,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub parry: ParryReport,
    pub value_one: ValueOneReport,
    pub uniqueness: Uniqueness,
    pub classification: Vec<Classification>,
    pub betas: Vec<IntervalJson>,
}

impl Certificate {
    /// Whether the list consists of the expansions of 1 of `base`.
    pub fn ok(&self) -> bool {
        self.parry.ok && self.value_one.ok
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "betas": self.betas,
            "residuals": self.value_one,
            "parry": self.parry,
            "uniqueness": self.uniqueness,
            "classification": self.classification,
        })
    }
}

/// Checks the Parry conditions and value-1 residuals, classifies entries by
/// zero tail and picks the strongest applicable uniqueness criterion.
pub fn certify(list: &ExpansionList, base: &AlternateBase) -> Certificate {
    let parry = check_parry(list);
    let value_one = verify_value_one(base, list);
    let classification = list
        .modes()
        .iter()
        .map(|m| match m {
            Mode::Greedy => Classification::Greedy,
            Mode::QuasiGreedy => Classification::QuasiGreedy,
        })
        .collect();
    let uniqueness = if list.all_up() {
        Uniqueness::UniqueByUP
    } else if list.entries().iter().all(|e| e.digit(1) >= 2) {
        Uniqueness::UniqueByLeadDigit
    } else {
        let alpha = alpha_root(list.p()).enclose(64);
        if base.betas().iter().all(|b| alpha.certainly_lt(b)) {
            Uniqueness::UniqueByAlpha
        } else {
            Uniqueness::Unknown
        }
    };
    Certificate {
        parry,
        value_one,
        uniqueness,
        classification,
        betas: base.betas_display().iter().map(Into::into).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{Dyadic, Interval};
    use crate::words::{Entry, UPWord};

    fn list(ws: &[&str]) -> ExpansionList {
        ExpansionList::from_up(ws.iter().map(|s| s.parse::<UPWord>().unwrap()).collect()).unwrap()
    }

    #[test]
    fn examples() {
        let b = AlternateBase::from_rationals(&[(2, 1), (3, 1)]).unwrap();
        let c = certify(&list(&["(21)", "(12)"]), &b);
        assert!(c.ok());
        assert_eq!(c.uniqueness, Uniqueness::UniqueByUP);
        assert_eq!(c.classification, vec![Classification::QuasiGreedy; 2]);
        let two = AlternateBase::from_rationals(&[(2, 1)]).unwrap();
        let c = certify(&list(&["2(0)"]), &two);
        assert!(c.ok());
        assert_eq!(c.classification, vec![Classification::Greedy]);
        assert_eq!(c.uniqueness, Uniqueness::UniqueByUP);
    }

    #[test]
    fn stream_rules() {
        let b = AlternateBase::from_rationals(&[(3, 1), (4, 1)]).unwrap();
        let l = ExpansionList::new(vec![Entry::stream(|_| 2), Entry::stream(|_| 3)]).unwrap();
        assert_eq!(certify(&l, &b).uniqueness, Uniqueness::UniqueByLeadDigit);
        let l = ExpansionList::new(vec![Entry::stream(|_| 1), Entry::stream(|_| 3)]).unwrap();
        assert_eq!(certify(&l, &b).uniqueness, Uniqueness::UniqueByAlpha);
        let point = |d: Dyadic| Interval::new(d.clone(), d);
        let small = AlternateBase::from_enclosures(vec![
            point(Dyadic::new(3.into(), -1)),
            point(Dyadic::from_int(4)),
        ])
        .unwrap();
        assert_eq!(certify(&l, &small).uniqueness, Uniqueness::Unknown);
    }
}
