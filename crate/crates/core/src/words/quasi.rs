use super::{canonicalize, Entry, ExpansionList, Mode, UPWord, Word, WordsError};

/// Replaces each entry ending in `0^ω` by its quasi-greedy version.
///
/// An entry `t_i = t_1⋯t_ℓ 0^ω` with `t_ℓ ≠ 0` becomes
/// `t_1⋯t_{ℓ−1}(t_ℓ−1)·b_{i−ℓ}`, indices mod `p`. Following these links
/// either reaches an entry without a zero tail or closes a cycle, which
/// becomes the period.
pub fn quasi_greedy_transform(list: &ExpansionList) -> Result<ExpansionList, WordsError> {
    let p = list.p();
    // the modified block u_i and link target for each zero-tail entry
    let mut links: Vec<Option<(Word, usize)>> = vec![None; p];
    for (index, e) in list.entries().iter().enumerate() {
        match e {
            Entry::Up(w) if w.ends_in_zeros() => {
                let mut u = w.preperiod().to_vec();
                let l = u.len();
                // canonical and above 10^ω, so the last preperiod digit is non-zero
                debug_assert!(l >= 1 && u[l - 1] > 0);
                u[l - 1] -= 1;
                let target = (index as i64 - l as i64).rem_euclid(p as i64) as usize;
                links[index] = Some((u, target));
            }
            Entry::Stream(_) if list.mode(index) == Mode::Greedy => {
                return Err(WordsError::StreamNotTransformable { index });
            }
            _ => {}
        }
    }
    let mut out = Vec::with_capacity(p);
    for (index, e) in list.entries().iter().enumerate() {
        if links[index].is_none() {
            out.push(e.clone());
            continue;
        }
        let mut path: Vec<usize> = Vec::new();
        let mut cur = index;
        let tail = loop {
            match &links[cur] {
                None => break Tail::Entry(cur),
                Some((_, next)) => {
                    if let Some(pos) = path.iter().position(|&v| v == cur) {
                        break Tail::Cycle(pos);
                    }
                    path.push(cur);
                    cur = *next;
                }
            }
        };
        let block = |v: usize| &links[v].as_ref().expect("linked").0;
        let word = match tail {
            Tail::Entry(t) => {
                let mut pre: Word = path.iter().flat_map(|&v| block(v).iter().copied()).collect();
                match &list.entries()[t] {
                    Entry::Up(w) => {
                        pre.extend_from_slice(w.preperiod());
                        canonicalize(&pre, w.period())?
                    }
                    Entry::Stream(s) => {
                        let s = s.clone();
                        let n0 = pre.len();
                        out.push(Entry::stream(move |n| {
                            if n <= n0 {
                                pre[n - 1]
                            } else {
                                s.digit(n - n0)
                            }
                        }));
                        continue;
                    }
                }
            }
            Tail::Cycle(start) => {
                let pre: Word = path[..start].iter().flat_map(|&v| block(v).iter().copied()).collect();
                let per: Word = path[start..].iter().flat_map(|&v| block(v).iter().copied()).collect();
                if per.iter().all(|&d| d == 0) {
                    return Err(WordsError::AllZeroTail { index });
                }
                canonicalize(&pre, &per)?
            }
        };
        out.push(Entry::Up(word));
    }
    let modes = vec![Mode::QuasiGreedy; p];
    ExpansionList::with_modes(out, modes).map_err(|e| match e {
        WordsError::NotAboveOneZero { index } => WordsError::AllZeroTail { index },
        other => other,
    })
}

enum Tail {
    Entry(usize),
    Cycle(usize),
}

/// Convenience for UP-only inputs.
pub fn quasi_greedy_words(words: &[UPWord]) -> Result<Vec<UPWord>, WordsError> {
    let list = ExpansionList::from_up(words.to_vec())?;
    quasi_greedy_transform(&list)?.up_words()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(s: &str) -> UPWord {
        s.parse().unwrap()
    }

    fn qg(ws: &[&str]) -> Result<Vec<UPWord>, WordsError> {
        quasi_greedy_words(&ws.iter().map(|s| up(s)).collect::<Vec<_>>())
    }

    #[test]
    fn examples() {
        assert_eq!(qg(&["2(0)"]).unwrap(), vec![up("(1)")]);
        assert_eq!(qg(&["11(0)"]).unwrap(), vec![up("(10)")]);
        assert_eq!(qg(&["2(0)", "3(0)"]).unwrap(), vec![up("(12)"), up("(21)")]);
    }

    #[test]
    fn non_zero_tails_unchanged() {
        assert_eq!(qg(&["(21)", "3(0)"]).unwrap(), vec![up("(21)"), up("2(21)")]);
    }

    #[test]
    fn recursion_substitutes_itself() {
        // d = t_1⋯t_{ℓ−1}(t_ℓ−1)·d for p = 1
        for s in ["11(0)", "201(0)", "3(0)", "1001(0)", "22(0)"] {
            let t = up(s);
            let d = &qg(&[s]).unwrap()[0];
            let mut u = t.preperiod().to_vec();
            let l = u.len();
            u[l - 1] -= 1;
            assert_eq!(d.prefix(l), u);
            assert_eq!(&d.shift_suffix(l), d);
            assert!(!d.ends_in_zeros());
        }
    }

    #[test]
    fn one_zero_is_rejected_before_transform() {
        // entries above 10^ω always leave a non-zero digit in each block
        let l = ExpansionList::with_modes(vec![Entry::Up(up("1(0)"))], vec![Mode::Greedy]);
        assert!(l.is_err());
        assert_eq!(qg(&["11(0)", "11(0)"]).unwrap(), vec![up("(10)"), up("(10)")]);
    }
}
