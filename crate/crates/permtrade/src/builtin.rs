//! Named instances: `circulant:M:D0,D1,...`, `matchcomp:M`, `bucket:T:K`,
//! `counterexample` (posets) and `tower:T:K` (a set system).

use permtrade_core::poset::{bucket_order, make_circulant, make_counterexample, make_matching_complement, Poset};
use permtrade_core::setsystem::SetSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Poset(Poset),
    SetSystem(SetSystem),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuiltinError {
    #[error("unknown builtin {0:?}")]
    Unknown(String),
    #[error("builtin {name:?}: {reason}")]
    Bad { name: String, reason: String },
}

fn bad(name: &str, reason: impl ToString) -> BuiltinError {
    BuiltinError::Bad {
        name: name.into(),
        reason: reason.to_string(),
    }
}

fn int<T: std::str::FromStr>(name: &str, s: &str) -> Result<T, BuiltinError> {
    s.parse().map_err(|_| bad(name, format!("{s:?} is not an integer")))
}

pub fn parse_builtin(name: &str) -> Result<Builtin, BuiltinError> {
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["counterexample"] => Ok(Builtin::Poset(make_counterexample())),
        ["matchcomp", m] => make_matching_complement(int(name, m)?)
            .map(Builtin::Poset)
            .map_err(|e| bad(name, e)),
        ["circulant", m, ds] => {
            let offsets = ds
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|d| int(name, d))
                .collect::<Result<Vec<u32>, _>>()?;
            make_circulant(int(name, m)?, &offsets)
                .map(Builtin::Poset)
                .map_err(|e| bad(name, e))
        }
        ["bucket", t, k] => bucket_order(int(name, t)?, int(name, k)?)
            .map(Builtin::Poset)
            .map_err(|e| bad(name, e)),
        ["tower", t, k] => SetSystem::tower_of_cubes(int(name, t)?, int(name, k)?)
            .map(Builtin::SetSystem)
            .map_err(|e| bad(name, e)),
        _ => Err(BuiltinError::Unknown(name.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert!(matches!(parse_builtin("counterexample"), Ok(Builtin::Poset(p)) if p.len() == 34));
        assert!(matches!(parse_builtin("circulant:11:0,1,3"), Ok(Builtin::Poset(p)) if p.len() == 22));
        assert!(matches!(parse_builtin("matchcomp:4"), Ok(Builtin::Poset(p)) if p.len() == 8));
        assert!(matches!(parse_builtin("bucket:3:2"), Ok(Builtin::Poset(p)) if p.len() == 6));
        assert!(matches!(parse_builtin("tower:2:2"), Ok(Builtin::SetSystem(a)) if a.len() == 7));
        assert!(matches!(parse_builtin("circulant:4:9"), Err(BuiltinError::Bad { .. })));
        assert!(matches!(parse_builtin("nope"), Err(BuiltinError::Unknown(_))));
    }
}
