use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{FreeWord, GroupError, Letter};

/// Crossing of a tangle diagram in arc labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleCrossing {
    pub over: String,
    pub incoming: String,
    pub outgoing: String,
    pub positive: bool,
}

/// A surface loop around a tangle endpoint: `name = arc^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endpoint {
    pub name: String,
    pub arc: String,
    /// `+1` where the strand enters the handlebody
    pub exp: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TangleDiagram {
    pub arcs: Vec<String>,
    pub crossings: Vec<TangleCrossing>,
    pub endpoints: Vec<Endpoint>,
    /// generators set to the identity
    pub kill: Vec<String>,
    pub longitude: Option<FreeWord<String>>,
}

/// Directed form of a crossing relator: `outgoing = over^∓1 · incoming · over^±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerRule {
    pub outgoing: String,
    pub over: String,
    pub incoming: String,
    pub positive: bool,
}

impl WirtingerRule {
    fn rhs(&self) -> FreeWord<String> {
        let o = Letter::new(self.over.clone(), self.positive);
        let i = Letter::new(self.incoming.clone(), false);
        FreeWord::from_letters(vec![o.clone(), i, o.inverse()])
    }

    pub fn relator(&self) -> FreeWord<String> {
        FreeWord::gen(&self.outgoing).inverse().mul(&self.rhs())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TanglePresentation {
    pub generators: Vec<String>,
    pub relators: Vec<FreeWord<String>>,
    pub rules: Vec<WirtingerRule>,
    pub longitude: Option<FreeWord<String>>,
    pub kill_set: Vec<String>,
    /// surface loop name to its word in the generators
    pub loops: BTreeMap<String, FreeWord<String>>,
}

impl TanglePresentation {
    /// Presentation with explicit relators and no crossing rules.
    pub fn free(generators: Vec<String>, relators: Vec<FreeWord<String>>) -> Self {
        TanglePresentation {
            generators,
            relators,
            rules: Vec::new(),
            longitude: None,
            kill_set: Vec::new(),
            loops: BTreeMap::new(),
        }
    }
}

/// One generator per arc and one relator per crossing.
pub fn wirtinger(d: &TangleDiagram) -> Result<TanglePresentation, GroupError> {
    let arcs: BTreeSet<&String> = d.arcs.iter().collect();
    if arcs.len() != d.arcs.len() {
        return Err(GroupError::Inconsistent("duplicate arc label".into()));
    }
    let known = |a: &String| -> Result<(), GroupError> {
        if arcs.contains(a) {
            Ok(())
        } else {
            Err(GroupError::Inconsistent(format!("unknown arc {a}")))
        }
    };
    let mut produced = BTreeSet::new();
    let mut rules = Vec::new();
    for c in &d.crossings {
        known(&c.over)?;
        known(&c.incoming)?;
        known(&c.outgoing)?;
        if !produced.insert(c.outgoing.clone()) {
            return Err(GroupError::Inconsistent(format!("arc {} leaves two crossings", c.outgoing)));
        }
        rules.push(WirtingerRule {
            outgoing: c.outgoing.clone(),
            over: c.over.clone(),
            incoming: c.incoming.clone(),
            positive: c.positive,
        });
    }
    let mut loops = BTreeMap::new();
    for e in &d.endpoints {
        known(&e.arc)?;
        if e.exp.abs() != 1 {
            return Err(GroupError::Inconsistent(format!("endpoint {} needs exponent ±1", e.name)));
        }
        if loops.insert(e.name.clone(), FreeWord::power(e.arc.clone(), e.exp as i64)).is_some() {
            return Err(GroupError::Inconsistent(format!("loop {} declared twice", e.name)));
        }
    }
    for k in &d.kill {
        known(k)?;
    }
    Ok(TanglePresentation {
        generators: d.arcs.clone(),
        relators: rules.iter().map(WirtingerRule::relator).collect(),
        rules,
        longitude: d.longitude.clone(),
        kill_set: d.kill.clone(),
        loops,
    })
}

struct Rewriter<'a> {
    pres: &'a TanglePresentation,
    rule_of: HashMap<&'a str, &'a WirtingerRule>,
    memo: HashMap<String, FreeWord<String>>,
    active: BTreeSet<String>,
}

impl<'a> Rewriter<'a> {
    fn new(pres: &'a TanglePresentation) -> Self {
        Rewriter {
            pres,
            rule_of: pres.rules.iter().map(|r| (r.outgoing.as_str(), r)).collect(),
            memo: HashMap::new(),
            active: BTreeSet::new(),
        }
    }

    /// Arc written in arcs that leave no crossing.
    fn arc(&mut self, a: &str) -> Result<FreeWord<String>, GroupError> {
        if self.pres.kill_set.iter().any(|k| k == a) {
            return Ok(FreeWord::identity());
        }
        if let Some(w) = self.memo.get(a) {
            return Ok(w.clone());
        }
        let Some(rule) = self.rule_of.get(a).copied() else {
            return Ok(FreeWord::gen(a));
        };
        if !self.active.insert(a.to_string()) {
            return Err(GroupError::Cyclic(a.to_string()));
        }
        let out = rule.rhs().substitute(|g| self.arc(g))?;
        self.active.remove(a);
        self.memo.insert(a.to_string(), out.clone());
        Ok(out)
    }
}

/// Pushes `ρ` through the loop substitution, the kill set and the
/// crossing rules, then checks that it free-reduces to the identity.
pub fn verify_relation_trivial(rho: &FreeWord<String>, pres: &TanglePresentation) -> Result<bool, GroupError> {
    Ok(rewrite_relation(rho, pres)?.is_empty())
}

/// Normal form used by [`verify_relation_trivial`].
pub fn rewrite_relation(rho: &FreeWord<String>, pres: &TanglePresentation) -> Result<FreeWord<String>, GroupError> {
    let in_arcs = rho.substitute(|g| {
        if let Some(w) = pres.loops.get(g) {
            Ok(w.clone())
        } else if pres.generators.contains(g) {
            Ok(FreeWord::gen(g))
        } else if pres.longitude.is_some() && g == "l" {
            Ok(pres.longitude.clone().unwrap_or_default())
        } else {
            Err(GroupError::Unexpressible(g.clone()))
        }
    })?;
    let mut rw = Rewriter::new(pres);
    in_arcs.substitute(|g| rw.arc(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cross(over: &str, i: &str, o: &str, positive: bool) -> TangleCrossing {
        TangleCrossing { over: over.into(), incoming: i.into(), outgoing: o.into(), positive }
    }

    #[test]
    fn single_arc_and_single_crossing() {
        let d = TangleDiagram { arcs: vec!["x".into()], ..Default::default() };
        let p = wirtinger(&d).unwrap();
        assert_eq!((p.generators.len(), p.relators.len()), (1, 0));
        let d = TangleDiagram {
            arcs: vec!["o".into(), "i".into(), "u".into()],
            crossings: vec![cross("o", "i", "u", true)],
            ..Default::default()
        };
        let p = wirtinger(&d).unwrap();
        assert_eq!(p.relators[0], FreeWord::parse("u^-1 o^-1 i o").unwrap());
        assert!(verify_relation_trivial(&FreeWord::parse("u^-1 o^-1 i o").unwrap(), &p).unwrap());
        assert!(verify_relation_trivial(&FreeWord::identity(), &p).unwrap());
        assert!(!verify_relation_trivial(&FreeWord::gen("i"), &p).unwrap());
        assert!(verify_relation_trivial(&FreeWord::gen("zz"), &p).is_err());
    }

    #[test]
    fn detects_cycles_and_bad_labels() {
        let d = TangleDiagram {
            arcs: vec!["a".into(), "b".into()],
            crossings: vec![cross("a", "a", "b", true), cross("b", "b", "a", true)],
            ..Default::default()
        };
        let p = wirtinger(&d).unwrap();
        assert!(matches!(verify_relation_trivial(&FreeWord::gen("a"), &p), Err(GroupError::Cyclic(_))));
        let bad = TangleDiagram { arcs: vec!["a".into()], crossings: vec![cross("a", "q", "a", true)], ..Default::default() };
        assert!(wirtinger(&bad).is_err());
    }
}
