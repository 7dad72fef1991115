//! On-disk JSON schemas. Every file carries `"schema": 1`; unknown fields
//! are rejected so the test corpus stays reproducible.

use std::collections::BTreeSet;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use gerst_core::{FloorPlan, GluingData, Point, SearchBounds, SkewShape, StandardShape};

pub const SCHEMA_VERSION: u32 = 1;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| {
        anyhow::anyhow!(
            "{}: line {} column {}: {}",
            path.display(),
            e.line(),
            e.column(),
            e
        )
    })
}

fn check_schema(schema: u32) -> Result<()> {
    if schema != SCHEMA_VERSION {
        bail!("unsupported schema version {schema} (expected {SCHEMA_VERSION})");
    }
    Ok(())
}

/// {"schema":1,"n":..,"cells":[[..],..]}
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeFile {
    pub schema: u32,
    pub n: usize,
    pub cells: Vec<Point>,
}

impl ShapeFile {
    pub fn into_skew(self) -> Result<SkewShape> {
        check_schema(self.schema)?;
        let cells: BTreeSet<Point> = self.cells.into_iter().collect();
        Ok(SkewShape::from_cells(self.n, cells)?)
    }

    pub fn validate_report(&self) -> serde_json::Value {
        let cells: BTreeSet<Point> = self.cells.iter().cloned().collect();
        match SkewShape::from_cells(self.n, cells) {
            Ok(shape) => json!({
                "skew": true,
                "connected": shape.is_connected(),
                "abstract": shape.is_abstract(),
                "standard": shape.inner().is_empty(),
                "cells": shape.len(),
                "components": shape.components().len(),
            }),
            Err(e) => json!({ "skew": false, "violation": e.to_string() }),
        }
    }
}

/// Either two skew shapes or four ideal generator lists.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsosFile {
    pub schema: u32,
    #[serde(default)]
    pub zeta: Option<SkewShape>,
    #[serde(default)]
    pub xi: Option<SkewShape>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub i: Option<Vec<Point>>,
    #[serde(default)]
    pub j: Option<Vec<Point>>,
    #[serde(default)]
    pub k: Option<Vec<Point>>,
    #[serde(default)]
    pub l: Option<Vec<Point>>,
}

pub enum IsosInput {
    Shapes(SkewShape, SkewShape),
    Ideals {
        n: usize,
        i: Vec<Point>,
        j: Vec<Point>,
        k: Vec<Point>,
        l: Vec<Point>,
    },
}

impl IsosFile {
    pub fn into_parts(self) -> Result<IsosInput> {
        check_schema(self.schema)?;
        match (self.zeta, self.xi, self.n, self.i, self.j, self.k, self.l) {
            (Some(zeta), Some(xi), None, None, None, None, None) => {
                Ok(IsosInput::Shapes(zeta, xi))
            }
            (None, None, Some(n), Some(i), Some(j), Some(k), Some(l)) => {
                Ok(IsosInput::Ideals { n, i, j, k, l })
            }
            _ => bail!("provide either zeta+xi or n+i+j+k+l"),
        }
    }
}

/// {"schema":1,"lambda":shape,"mu":shape,"nu":[shape..],"b":[[..]..],"c":[[..]..]}
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub schema: u32,
    pub lambda: StandardShape,
    pub mu: StandardShape,
    pub nu: Vec<SkewShape>,
    pub b: Vec<Point>,
    pub c: Vec<Point>,
}

impl ModuleFile {
    pub fn into_gluing(self) -> GluingData {
        GluingData {
            lambda: self.lambda,
            mu: self.mu,
            nu: self.nu,
            b: self.b,
            c: self.c,
        }
    }

    pub fn from_gluing(g: &GluingData) -> Self {
        ModuleFile {
            schema: SCHEMA_VERSION,
            lambda: g.lambda.clone(),
            mu: g.mu.clone(),
            nu: g.nu.clone(),
            b: g.b.clone(),
            c: g.c.clone(),
        }
    }
}

/// {"schema":1,"nu":[shape..],"b":[[x,y]..],"c":[[x,y]..]} with optional
/// realization offsets bz/cz.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanFile {
    pub schema: u32,
    pub nu: Vec<SkewShape>,
    pub b: Vec<Point>,
    pub c: Vec<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bz: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cz: Option<Vec<u32>>,
}

impl PlanFile {
    pub fn into_plan(self) -> (FloorPlan, Option<Vec<u32>>, Option<Vec<u32>>) {
        (
            FloorPlan {
                nu: self.nu,
                b: self.b,
                c: self.c,
            },
            self.bz,
            self.cz,
        )
    }

    pub fn from_plan(plan: &FloorPlan) -> Self {
        PlanFile {
            schema: SCHEMA_VERSION,
            nu: plan.nu.clone(),
            b: plan.b.clone(),
            c: plan.c.clone(),
            bz: None,
            cz: None,
        }
    }
}

/// Campaign bounds: inline JSON (starts with '{') or a file path.
#[derive(Clone)]
pub struct BoundsArg(String);

impl FromStr for BoundsArg {
    type Err = std::convert::Infallible;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(BoundsArg(s.to_string()))
    }
}

impl BoundsArg {
    pub fn resolve(&self) -> Result<SearchBounds> {
        if self.0.trim_start().starts_with('{') {
            serde_json::from_str(&self.0).context("parsing inline bounds")
        } else {
            read_json(Path::new(&self.0))
        }
    }
}
