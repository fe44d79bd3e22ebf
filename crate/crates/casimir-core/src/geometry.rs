//! Plate geometry for a parallel-plate cavity.
//!
//! The gap may be filled by a transparent spacer of refractive index n >= 1;
//! every closed form then sees the optical gap n * a instead of the physical
//! gap a. The geometry records both so reports can show the substitution.

use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{require_finite_positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CavityGeometry {
    area: f64,
    gap: f64,
    refractive_index: f64,
    optical_gap: f64,
    extent: f64,
}

impl CavityGeometry {
    /// Plates of the given area separated by a vacuum gap.
    pub fn new(area: f64, gap: f64) -> Result<Self> {
        Self::with_spacer(area, gap, 1.0)
    }

    /// Plates separated by a spacer of refractive index n >= 1.
    pub fn with_spacer(area: f64, gap: f64, refractive_index: f64) -> Result<Self> {
        let area = require_finite_positive("area", area)?;
        let gap = require_finite_positive("gap", gap)?;
        require_finite_positive("refractive_index", refractive_index)?;
        if refractive_index < 1.0 {
            return Err(Error::domain(
                "refractive_index",
                refractive_index,
                "must be at least 1",
            ));
        }
        let optical_gap = refractive_index * gap;
        if !optical_gap.is_finite() {
            return Err(Error::domain("gap", gap, "optical gap overflows"));
        }
        Ok(CavityGeometry {
            area,
            gap,
            refractive_index,
            optical_gap,
            extent: area.sqrt().max(gap),
        })
    }

    /// Circular plates of the given diameter, vacuum gap.
    pub fn disk(diameter: f64, gap: f64) -> Result<Self> {
        Self::disk_with_spacer(diameter, gap, 1.0)
    }

    /// Circular plates of the given diameter with a spacer of index n.
    pub fn disk_with_spacer(diameter: f64, gap: f64, refractive_index: f64) -> Result<Self> {
        let diameter = require_finite_positive("diameter", diameter)?;
        let mut geometry = Self::with_spacer(PI * diameter * diameter / 4.0, gap, refractive_index)?;
        geometry.extent = diameter.max(gap);
        Ok(geometry)
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn refractive_index(&self) -> f64 {
        self.refractive_index
    }

    /// n * gap; the length every mode-structure formula actually sees.
    pub fn optical_gap(&self) -> f64 {
        self.optical_gap
    }

    /// Largest linear dimension, used to test the rigid-cavity approximation.
    pub fn extent(&self) -> f64 {
        self.extent
    }
}
