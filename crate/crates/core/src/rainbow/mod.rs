//! Rainbow Hamilton cycles: protected sets, colour-set selection, the
//! switching-based resampling search and the classification-driven pipeline.

mod colour_set;
mod matching;
mod protected;
mod search;

pub use colour_set::{
    select_colour_set, select_colour_set_with, verify_selection, ColourMultisetFamily, ColourSelection, FamilyParams,
    SelectConfig,
};
pub use matching::greedy_rainbow_matching;
pub use protected::{check_c1_c2, check_d1_d3, protect_biclique, protect_two_clique, ProtectedDetails, ProtectedInstance};
pub use search::{
    conflict_pairs, switching_search, switching_search_from, ConflictPair, RestartReport, RestartStatus, SearchConfig,
    SearchReport, SearchResult,
};

use serde::{Deserialize, Serialize};

use crate::classification::{classify, repair_biclique, repair_two_clique, Classification, ClassifyConfig, Params, Tag};
use crate::error::{invalid, Error, Result};
use crate::graph::{is_dirac, Colouring, DirectedHamCycle, Edge, Graph, ProtectedSet};
use crate::hamilton::{biclique_ham, two_clique_ham, ConstructionRoute};
use crate::seed::derive_seed;

/// The first conjunct a candidate cycle violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    SizeMismatch { cycle: usize, graph: usize },
    /// A cycle edge absent from the graph.
    NotInGraph(Edge),
    /// Two cycle edges share a colour.
    NotRainbow { colour: u32, first: Edge, second: Edge },
    /// A protected edge the cycle misses.
    MissingProtected(Edge),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::SizeMismatch { cycle, graph } => write!(f, "hamilton: cycle has {cycle} vertices, graph has {graph}"),
            Violation::NotInGraph(e) => write!(f, "hamilton: edge {e} is not in the graph"),
            Violation::NotRainbow { colour, first, second } => {
                write!(f, "rainbow: edges {first} and {second} both have colour {colour}")
            }
            Violation::MissingProtected(e) => write!(f, "protected: edge {e} is not on the cycle"),
        }
    }
}

/// Recomputes every requirement from scratch: Hamilton cycle of `g`,
/// rainbow under `c`, containing `z`.
pub fn check(g: &Graph, c: &Colouring, h: &DirectedHamCycle, z: &ProtectedSet) -> std::result::Result<(), Violation> {
    if h.n() != g.n() {
        return Err(Violation::SizeMismatch { cycle: h.n(), graph: g.n() });
    }
    let edges = h.edges();
    if let Some(e) = edges.iter().find(|e| !g.contains(**e)) {
        return Err(Violation::NotInGraph(*e));
    }
    let mut seen = std::collections::BTreeMap::new();
    for &e in &edges {
        let col = c.colour_of(e).ok_or(Violation::NotInGraph(e))?;
        if let Some(&first) = seen.get(&col) {
            return Err(Violation::NotRainbow { colour: col, first, second: e });
        }
        seen.insert(col, e);
    }
    match z.edges().iter().find(|e| !h.contains(**e)) {
        Some(e) => Err(Violation::MissingProtected(*e)),
        None => Ok(()),
    }
}

pub fn verify(g: &Graph, c: &Colouring, h: &DirectedHamCycle, z: &ProtectedSet) -> bool {
    check(g, c, h, z).is_ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    pub search: SearchConfig,
    pub classify: ClassifyConfig,
    /// Run on graphs below the Dirac threshold.
    pub allow_non_dirac: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { search: SearchConfig::default(), classify: ClassifyConfig::default(), allow_non_dirac: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    TwoCliques,
    Biclique,
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteDiagnostic {
    pub route: Route,
    pub succeeded: bool,
    /// Why the route stopped, when it did not succeed.
    pub failure: Option<String>,
    pub protected: Vec<Edge>,
    pub construction: Option<ConstructionRoute>,
    pub details: Option<ProtectedDetails>,
    pub search: Option<SearchReport>,
}

impl RouteDiagnostic {
    fn new(route: Route) -> Self {
        RouteDiagnostic { route, succeeded: false, failure: None, protected: Vec::new(), construction: None, details: None, search: None }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RainbowResult {
    pub cycle: Option<DirectedHamCycle>,
    pub classification: Classification,
    pub routes: Vec<RouteDiagnostic>,
}

impl RainbowResult {
    pub fn search_reports(&self) -> impl Iterator<Item = &SearchReport> {
        self.routes.iter().filter_map(|r| r.search.as_ref())
    }
}

/// Classify, then search on the reduced graph of the matching extremal
/// case, falling back to a direct search on `g`. Every returned cycle has
/// passed [`verify`] against `g`.
pub fn find_rainbow_hc(g: &Graph, c: &Colouring, p: &Params, cfg: &PipelineConfig) -> Result<RainbowResult> {
    p.validate()?;
    cfg.search.validate()?;
    if g.edges().iter().any(|e| c.colour_of(*e).is_none()) {
        return invalid("colouring does not cover the graph");
    }
    if !cfg.allow_non_dirac && !is_dirac(g)? {
        return invalid("graph is not Dirac (minimum degree below n/2)");
    }
    let classification = classify(g, p, &ClassifyConfig { seed: derive_seed(cfg.search.seed, 1), ..cfg.classify })?;
    let mut routes = Vec::new();
    let extremal = match classification.tag {
        Tag::CloseToTwoCliques => Some(Route::TwoCliques),
        Tag::CloseToBipartite => Some(Route::Biclique),
        _ => None,
    };
    if let Some(route) = extremal {
        let a0 = classification.partition.clone().expect("closeness tag carries a partition");
        let mut diag = RouteDiagnostic::new(route);
        match extremal_route(g, c, p, cfg, route, &a0, &mut diag) {
            Ok(Some(h)) => {
                diag.succeeded = true;
                routes.push(diag);
                return Ok(RainbowResult { cycle: Some(h), classification, routes });
            }
            Ok(None) => diag.failure = Some("search budget exhausted".into()),
            Err(e) => diag.failure = Some(e.to_string()),
        }
        routes.push(diag);
    }
    let mut diag = RouteDiagnostic::new(Route::Generic);
    let z = ProtectedSet::empty();
    let cycle = match switching_search(g, c, &z, &cfg.search) {
        Ok(res) => {
            diag.search = Some(res.report);
            res.cycle
        }
        Err(Error::NoStart(msg)) => {
            diag.failure = Some(format!("no start: {msg}"));
            None
        }
        Err(e) => return Err(e),
    };
    let cycle = cycle.filter(|h| verify(g, c, h, &z));
    diag.succeeded = cycle.is_some();
    if cycle.is_none() && diag.failure.is_none() {
        diag.failure = Some("search budget exhausted".into());
    }
    routes.push(diag);
    Ok(RainbowResult { cycle, classification, routes })
}

fn extremal_route(
    g: &Graph,
    c: &Colouring,
    p: &Params,
    cfg: &PipelineConfig,
    route: Route,
    a0: &[usize],
    diag: &mut RouteDiagnostic,
) -> Result<Option<DirectedHamCycle>> {
    let seed = cfg.search.seed;
    let budget = cfg.search.start_budget;
    let (inst, construction) = match route {
        Route::TwoCliques => {
            let part = repair_two_clique(g, a0, p)?;
            let inst = protect_two_clique(g, c, &part)?;
            let (f, f2) = (inst.z.edges()[0], inst.z.edges()[1]);
            let built = two_clique_ham(&inst.reduced, &part, f, f2, budget, derive_seed(seed, 2))?;
            (inst, built)
        }
        Route::Biclique => {
            let part = repair_biclique(g, a0, p)?;
            let inst = protect_biclique(g, c, &part, p, derive_seed(seed, 3))?;
            let built = biclique_ham(&inst.reduced, &part, &inst.z, budget, derive_seed(seed, 2))?;
            (inst, built)
        }
        Route::Generic => unreachable!("generic route has no protected set"),
    };
    diag.protected = inst.z.edges().to_vec();
    diag.construction = Some(construction.route);
    diag.details = Some(inst.details.clone());
    let c_hat = c.restrict(&inst.reduced)?;
    let res = switching_search_from(&inst.reduced, &c_hat, &inst.z, &construction.cycle, &cfg.search)?;
    diag.search = Some(res.report);
    Ok(res.cycle.filter(|h| verify(g, c, h, &inst.z)))
}
