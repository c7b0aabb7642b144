//! Synthetic cases used by the tests and the `example` command.
//!
//! * `toy`: 2 power nodes, 2 gas nodes, 1 SVL site, 2 representative days.
//! * `spike`: 1 node with a daily price spike and a flexible transport share.
//! * `import`: 1 node fed by a hydro import node.
//! * `ldes`: 1 node with solar, batteries and long-duration storage.
//! * `ne`: 18 power nodes (one import), 23 gas nodes, 5 SVL sites, 30
//!   existing and 34 candidate lines; lines and pipelines carry explicit
//!   FOM columns.
//!
//! Series are smooth closed-form shapes so every case is reproducible.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use crate::error::{CoreError, Result};
use crate::model::{DemandInputs, ModelInputs, TimeStructure, DAYS, HOURS};

pub const NAMES: &[&str] = &["toy", "spike", "import", "ldes", "ne"];

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    /// File name -> CSV text for the network tables.
    pub files: BTreeMap<String, String>,
    pub demand: DemandInputs,
    pub time: TimeStructure,
}

impl Fixture {
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|source| CoreError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        for (name, text) in &self.files {
            let path = dir.join(name);
            std::fs::write(&path, text).map_err(|source| CoreError::Io { path, source })?;
        }
        self.demand.write(dir)?;
        self.time.write(&dir.join("rep_days.csv"))
    }

    /// Writes the case to `dir` and loads it back through the file layer.
    pub fn load(&self, dir: &Path) -> Result<ModelInputs> {
        self.write(dir)?;
        ModelInputs::load(dir, None)
    }
}

pub fn by_name(name: &str) -> Option<Fixture> {
    Some(match name {
        "toy" => toy(),
        "spike" => spike(),
        "import" => import(),
        "ldes" => ldes(),
        "ne" => ne(),
        _ => return None,
    })
}

fn table(header: &str, rows: &[String]) -> String {
    let mut s = String::from(header);
    s.push('\n');
    for r in rows {
        s.push_str(r);
        s.push('\n');
    }
    s
}

const PLANTS_HEADER: &str = "id,class,resource_class,nameplate[MW],min_output,ramp,heat_rate[MMBtu/MWh],capture_rate,\
capex[$/MW],fom[$/MW/yr],vom[$/MWh],fuel_price[$/MMBtu],decom_cost[$/MW],lifetime[yr]";

const PLANT_ROWS: &[&str] = &[
    "ccgt,gas,,500,0.3,0.6,6.4,0,1000000,13000,2.5,0,20000,30",
    "ocgt,gas,,200,0.2,,9.9,0,800000,8000,5,0,15000,30",
    "ccs,ccs,,400,0.3,0.5,7.5,0.9,2500000,40000,6,0,50000,30",
    "nuclear,nuclear,nuclear,1000,0.9,0.1,10.4,0,7000000,120000,2.8,0.72,500000,40",
    "hydro,hydro,hydro,100,0,,0,0,5000000,40000,0,0,0,50",
    "solar,vre,solar,100,0,,0,0,1000000,15000,0,0,0,30",
    "wind,vre,wind,100,0,,0,0,1400000,40000,0,0,0,30",
    "offwind,vre,offwind,400,0,,0,0,3500000,80000,0,0,0,30",
];

fn plants(ids: &[&str]) -> String {
    let rows: Vec<String> = PLANT_ROWS
        .iter()
        .filter(|r| ids.iter().any(|id| r.split(',').next() == Some(id)))
        .map(|r| r.to_string())
        .collect();
    table(PLANTS_HEADER, &rows)
}

const STORAGE_HEADER: &str = "id,duration,charge_eff,discharge_eff,self_discharge,energy_capex[$/MWh],\
power_capex[$/MW],energy_fom[$/MWh/yr],power_fom[$/MW/yr],lifetime[yr]";
const LI_ION: &str = "li_ion,short,0.92,0.92,0,250000,250000,6000,6000,15";
const LDES: &str = "ldes,long,0.7,0.7,0.0001,20000,1500000,500,20000,25";

const SVL_HEADER: &str = "id,init_storage[MMBtu],init_vaporization[MMBtu/d],init_liquefaction[MMBtu/d],\
liq_efficiency,vpr_efficiency,boil_off,storage_capex[$/MMBtu],vaporizer_capex[$/MMBtu/d],\
storage_fom[$/MMBtu/yr],vaporizer_fom[$/MMBtu/d/yr],lifetime[yr]";

fn svl_row(id: &str, scale: f64) -> String {
    format!(
        "{id},{},{},{},0.85,0.989,0.0005,700,1818.31,7,18,40",
        1.0e6 * scale,
        2.0e5 * scale,
        2.0e4 * scale
    )
}

const LINES_HEADER: &str = "id,from,to,exists,capacity[MW],length[mi],susceptance,capex[$/MW/mi],lifetime[yr]";
const PIPES_HEADER: &str = "id,from,to,exists,capacity[MMBtu/d],length[mi],capex[$/mi],decom_cost[$/mi],lifetime[yr]";
const GAS_HEADER: &str = "id,kind,inj_min[MMBtu/d],inj_max[MMBtu/d],svl";
const NODES_HEADER: &str = "id,zone,is_import,co2_distance[mi],gas_nodes";
const NODE_PLANTS_HEADER: &str = "node,plant,existing,buildable";

/// Solar shape: zero at night, peaks at noon, stronger in summer.
fn solar_cf(h: usize) -> f64 {
    let hod = (h % 24) as f64;
    let day = (h / 24) as f64;
    let season = 0.75 + 0.25 * (2.0 * PI * (day - 80.0) / 365.0).sin();
    let s = (PI * (hod - 6.0) / 12.0).sin().max(0.0);
    (0.8 * season * s).clamp(0.0, 1.0)
}

fn wind_cf(h: usize, phase: f64) -> f64 {
    let x = h as f64;
    let day = (h / 24) as f64;
    let season = 0.1 * (2.0 * PI * day / 365.0).cos();
    (0.35 + season + 0.2 * (2.0 * PI * x / 37.0 + phase).sin()).clamp(0.0, 1.0)
}

/// Hourly load with a winter peak and an evening bump.
fn load_shape(h: usize, base: f64) -> f64 {
    let hod = (h % 24) as f64;
    let day = (h / 24) as f64;
    let season = 1.0 + 0.15 * (2.0 * PI * day / 365.0).cos();
    let diurnal = 1.0 + 0.2 * (2.0 * PI * (hod - 13.0) / 24.0).sin().max(-0.5);
    base * season * diurnal
}

/// Daily gas load peaking mid-winter.
fn gas_shape(d: usize, base: f64) -> f64 {
    base * (1.0 + 0.8 * (2.0 * PI * d as f64 / 365.0).cos().max(-0.6))
}

fn series(f: impl Fn(usize) -> f64, n: usize) -> Vec<f64> {
    (0..n).map(f).collect()
}

/// Winter and summer representative days.
fn two_season_days() -> TimeStructure {
    let map: Vec<usize> = (0..DAYS).map(|d| if (91..=273).contains(&d) { 196 } else { 15 }).collect();
    TimeStructure::from_calendar_map(&map).expect("valid map")
}

pub fn toy() -> Fixture {
    let mut files = BTreeMap::new();
    files.insert(
        "nodes.csv".into(),
        table(NODES_HEADER, &["n1,A,false,50,k2".into(), "n2,B,false,80,k2".into()]),
    );
    files.insert("plants.csv".into(), plants(&["ccgt", "ocgt", "ccs", "solar", "wind"]));
    files.insert(
        "node_plants.csv".into(),
        table(
            NODE_PLANTS_HEADER,
            &[
                "n1,ccgt,2,true".into(),
                "n1,solar,0,true".into(),
                "n2,ocgt,1,false".into(),
                "n2,ccs,0,true".into(),
                "n2,wind,0,true".into(),
            ],
        ),
    );
    files.insert(
        "lines.csv".into(),
        table(
            LINES_HEADER,
            &["l1,n1,n2,true,400,100,10,7398,30".into(), "l2,n1,n2,false,800,100,10,7398,30".into()],
        ),
    );
    files.insert(
        "gas_nodes.csv".into(),
        table(GAS_HEADER, &["k1,boundary,0,600000,".into(), "k2,load,0,0,s1".into()]),
    );
    files.insert(
        "pipelines.csv".into(),
        table(
            PIPES_HEADER,
            &[
                "p1,k1,k2,true,250000,100,0,100000,50".into(),
                "p2,k1,k2,false,250000,100,2000000,0,50".into(),
            ],
        ),
    );
    files.insert("svl.csv".into(), table(SVL_HEADER, &[svl_row("s1", 0.5)]));
    files.insert("storage.csv".into(), table(STORAGE_HEADER, &[LI_ION.into()]));

    let mut demand = DemandInputs::default();
    demand.power.insert("n1".into(), series(|h| load_shape(h, 700.0), HOURS));
    demand.power.insert("n2".into(), series(|h| load_shape(h, 500.0), HOURS));
    demand.gas.insert("k2".into(), series(|d| gas_shape(d, 110_000.0), DAYS));
    demand.cf.insert("solar".into(), series(solar_cf, HOURS));
    demand.cf.insert("wind".into(), series(|h| wind_cf(h, 0.0), HOURS));
    Fixture {
        name: "toy".into(),
        files,
        demand,
        time: two_season_days(),
    }
}

fn single_node(extra_plants: &[&str], node_plants: &[String], storage: &[&str]) -> BTreeMap<String, String> {
    let mut files = BTreeMap::new();
    files.insert("nodes.csv".into(), table(NODES_HEADER, &["n1,A,false,0,".into()]));
    let mut pl = plants(extra_plants);
    pl.push_str("base,thermal,,1000,0,,8,0,1000000,10000,20,0,0,30\n");
    pl.push_str("peaker,thermal,,1,0,,10,0,900000,8000,5,20,0,30\n");
    files.insert("plants.csv".into(), pl);
    let mut np = vec!["n1,base,1,false".to_string(), "n1,peaker,0,true".to_string()];
    np.extend(node_plants.iter().cloned());
    files.insert("node_plants.csv".into(), table(NODE_PLANTS_HEADER, &np));
    files.insert("lines.csv".into(), table(LINES_HEADER, &[]));
    files.insert("gas_nodes.csv".into(), table(GAS_HEADER, &[]));
    files.insert("pipelines.csv".into(), table(PIPES_HEADER, &[]));
    files.insert("svl.csv".into(), table(SVL_HEADER, &[]));
    let rows: Vec<String> = storage.iter().map(|s| s.to_string()).collect();
    files.insert("storage.csv".into(), table(STORAGE_HEADER, &rows));
    files
}

/// A bare one-node case: `plants` and `node_plants` are raw CSV rows in the
/// `plants.csv` and `node_plants.csv` layouts, `params` are `key,value` rows.
/// Demand is flat at `demand` MW and there is a single representative day.
pub fn one_node(plants: &[&str], node_plants: &[&str], params: &[&str], demand: f64) -> Fixture {
    let rows = |r: &[&str]| r.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let mut files = BTreeMap::new();
    files.insert("nodes.csv".into(), table(NODES_HEADER, &["n1,A,false,0,".into()]));
    files.insert("plants.csv".into(), table(PLANTS_HEADER, &rows(plants)));
    files.insert("node_plants.csv".into(), table(NODE_PLANTS_HEADER, &rows(node_plants)));
    files.insert("lines.csv".into(), table(LINES_HEADER, &[]));
    files.insert("gas_nodes.csv".into(), table(GAS_HEADER, &[]));
    files.insert("pipelines.csv".into(), table(PIPES_HEADER, &[]));
    files.insert("svl.csv".into(), table(SVL_HEADER, &[]));
    files.insert("storage.csv".into(), table(STORAGE_HEADER, &[]));
    if !params.is_empty() {
        files.insert("params.csv".into(), table("key,value", &rows(params)));
    }
    let mut d = DemandInputs::default();
    d.power.insert("n1".into(), vec![demand; HOURS]);
    Fixture {
        name: "one_node".into(),
        files,
        demand: d,
        time: TimeStructure::evenly_spaced(1).expect("valid"),
    }
}

/// Demand of the spike case: flat 900 MW with a 400 MW bump at 18:00.
pub const SPIKE_BASE: f64 = 900.0;
pub const SPIKE_EXTRA: f64 = 400.0;
pub const SPIKE_HOUR: usize = 18;

pub fn spike() -> Fixture {
    let files = single_node(&[], &[], &[]);
    let mut demand = DemandInputs::default();
    demand.power.insert(
        "n1".into(),
        series(|h| SPIKE_BASE + if h % 24 == SPIKE_HOUR { SPIKE_EXTRA } else { 0.0 }, HOURS),
    );
    demand.transport_share.insert("n1".into(), vec![0.3; HOURS]);
    Fixture {
        name: "spike".into(),
        files,
        demand,
        time: TimeStructure::evenly_spaced(2).expect("valid"),
    }
}

pub fn import() -> Fixture {
    let mut files = single_node(&[], &[], &[]);
    files.insert(
        "nodes.csv".into(),
        table(NODES_HEADER, &["n1,A,false,0,".into(), "q1,Q,true,0,".into()]),
    );
    files.insert("lines.csv".into(), table(LINES_HEADER, &["lq,q1,n1,true,2000,200,10,7398,30".into()]));
    files.insert(
        "params.csv".into(),
        table(
            "key,value",
            &["import_energy_cap[MWh],2000000".into(), "import_power_cap[MW],1500".into()],
        ),
    );
    let mut demand = DemandInputs::default();
    demand.power.insert("n1".into(), series(|h| load_shape(h, 800.0), HOURS));
    demand.import_inflow = Some(vec![300.0; HOURS]);
    Fixture {
        name: "import".into(),
        files,
        demand,
        time: TimeStructure::evenly_spaced(4).expect("valid"),
    }
}

pub fn ldes() -> Fixture {
    let files = single_node(&["solar"], &["n1,solar,0,true".into()], &[LI_ION, LDES]);
    let mut demand = DemandInputs::default();
    demand.power.insert("n1".into(), series(|h| load_shape(h, 600.0), HOURS));
    demand.cf.insert("solar".into(), series(solar_cf, HOURS));
    Fixture {
        name: "ldes".into(),
        files,
        demand,
        time: TimeStructure::evenly_spaced(4).expect("valid"),
    }
}

/// Network counts of the NE-shaped case.
pub const NE_POWER_NODES: usize = 18;
pub const NE_GAS_NODES: usize = 23;
pub const NE_SVL: usize = 5;
pub const NE_EXISTING_LINES: usize = 30;
pub const NE_CANDIDATE_LINES: usize = 34;

pub fn ne() -> Fixture {
    let n = NE_POWER_NODES;
    let zones = ["CT", "MA", "ME", "NH", "RI", "VT"];
    let mut nodes = Vec::new();
    for i in 1..n {
        let gas = format!("g{}", 4 + (i - 1) % (NE_GAS_NODES - 3));
        nodes.push(format!("n{i},{},false,{},{gas}", zones[i % zones.len()], 40 + 13 * i));
    }
    nodes.push(format!("n{n},QC,true,0,"));

    let mut node_plants = Vec::new();
    for i in 1..n {
        node_plants.push(format!("n{i},ccgt,{},true", i % 3));
        node_plants.push(format!("n{i},ocgt,{},true", (i + 1) % 2));
        node_plants.push(format!("n{i},ccs,0,true"));
        node_plants.push(format!("n{i},solar,{},true", i % 4));
        node_plants.push(format!("n{i},wind,{},true", i % 2));
        if i % 3 == 0 {
            node_plants.push(format!("n{i},offwind,0,true"));
        }
        if i % 6 == 1 {
            node_plants.push(format!("n{i},nuclear,1,false"));
        }
        if i % 5 == 2 {
            node_plants.push(format!("n{i},hydro,3,false"));
        }
    }

    // Existing lines: a ring over the 17 regular nodes, 11 chords and two
    // import ties. Candidates: 34 further pairs.
    let mut lines = Vec::new();
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|i| (i, i % (n - 1) + 1)).collect();
    for i in 1..=11 {
        pairs.push((i, (i + 5) % (n - 1) + 1));
    }
    pairs.push((n, 6));
    pairs.push((n, 9));
    assert_eq!(pairs.len(), NE_EXISTING_LINES);
    for (k, (a, b)) in pairs.iter().enumerate() {
        let cap = if *a == n { if *b == 6 { 2000 } else { 1200 } } else { 800 + 100 * (k % 5) };
        lines.push(format!("l{},n{a},n{b},true,{cap},{},{},7398,30,49.3", k + 1, 30 + 7 * (k % 9), 5 + k % 4));
    }
    let mut cand = 0;
    'outer: for step in [2usize, 3, 4, 7] {
        for i in 1..n {
            let j = (i + step - 1) % (n - 1) + 1;
            if i == j || pairs.contains(&(i, j)) || pairs.contains(&(j, i)) {
                continue;
            }
            cand += 1;
            lines.push(format!(
                "c{cand},n{i},n{j},false,{},{},{},7398,30,49.3",
                1000 + 100 * (cand % 4),
                25 + 5 * (cand % 7),
                5 + cand % 3
            ));
            pairs.push((i, j));
            if cand == NE_CANDIDATE_LINES {
                break 'outer;
            }
        }
    }
    assert_eq!(cand, NE_CANDIDATE_LINES);

    let mut gas = Vec::new();
    for k in 1..=NE_GAS_NODES {
        let (kind, inj) = if k <= 3 { ("boundary", 2_000_000) } else { ("load", 0) };
        let svl = if k > 3 && (k - 4) % 4 == 0 && (k - 4) / 4 < NE_SVL {
            format!("s{}", (k - 4) / 4 + 1)
        } else {
            String::new()
        };
        gas.push(format!("g{k},{kind},0,{inj},{svl}"));
    }
    let mut pipes = Vec::new();
    for k in 4..=NE_GAS_NODES {
        let from = if k <= 6 { (k - 4) % 3 + 1 } else { k - 3 };
        pipes.push(format!("p{k},g{from},g{k},true,{},60,0,100000,50,21600", 300_000 + 10_000 * (k % 5)));
    }
    for (m, k) in (6..=NE_GAS_NODES).step_by(4).enumerate() {
        pipes.push(format!("q{},g{},g{k},false,300000,80,2500000,0,50,21600", m + 1, (m % 3) + 1));
    }
    let svls: Vec<String> = (1..=NE_SVL).map(|s| svl_row(&format!("s{s}"), 1.0)).collect();

    let mut files = BTreeMap::new();
    files.insert("nodes.csv".into(), table(NODES_HEADER, &nodes));
    files.insert("plants.csv".into(), plants(&["ccgt", "ocgt", "ccs", "nuclear", "hydro", "solar", "wind", "offwind"]));
    files.insert("node_plants.csv".into(), table(NODE_PLANTS_HEADER, &node_plants));
    files.insert("lines.csv".into(), table(&format!("{LINES_HEADER},fom[$/MW/mi/yr]"), &lines));
    files.insert("gas_nodes.csv".into(), table(GAS_HEADER, &gas));
    files.insert("pipelines.csv".into(), table(&format!("{PIPES_HEADER},fom[$/mi/yr]"), &pipes));
    files.insert("svl.csv".into(), table(SVL_HEADER, &svls));
    files.insert("storage.csv".into(), table(STORAGE_HEADER, &[LI_ION.into()]));
    files.insert(
        "resource_caps.csv".into(),
        table(
            "class,cap[MW]",
            &[
                "solar,22000".into(),
                "wind,10000".into(),
                "offwind,280000".into(),
                "nuclear,3500".into(),
                "hydro,2600".into(),
            ],
        ),
    );

    let mut demand = DemandInputs::default();
    for i in 1..=n {
        demand.power.insert(format!("n{i}"), series(|h| load_shape(h, 600.0 + 40.0 * i as f64), HOURS));
    }
    for k in 4..=NE_GAS_NODES {
        demand.gas.insert(format!("g{k}"), series(|d| gas_shape(d, 40_000.0 + 2_000.0 * k as f64), DAYS));
    }
    demand.cf.insert("solar".into(), series(solar_cf, HOURS));
    for i in 1..n {
        demand.cf.insert(format!("n{i}.wind"), series(|h| wind_cf(h, i as f64), HOURS));
    }
    demand.cf.insert("offwind".into(), series(|h| (wind_cf(h, 2.0) + 0.1).min(1.0), HOURS));
    demand.import_inflow = Some(series(|h| 2_000.0 + 800.0 * (2.0 * PI * (h as f64 / 8760.0 - 0.4)).cos(), HOURS));
    files.insert(
        "params.csv".into(),
        table(
            "key,value",
            &["import_energy_cap[MWh],20000000".into(), "import_power_cap[MW],4500".into()],
        ),
    );
    Fixture {
        name: "ne".into(),
        files,
        demand,
        time: TimeStructure::evenly_spaced(2).expect("valid"),
    }
}
