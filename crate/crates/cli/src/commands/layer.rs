//! `layer`: dump one pyramid layer, optionally with cube coordinates.
//!
//! CSV keeps stdout a pure table; the layer sum and its power-of-three flag
//! ride on stderr there. JSON embeds them, pretty prints them inline.

use std::io::Write;

use pascube::{build_layer, layer_position_to_cube, BigCount, LayerGrid};

use crate::args::{Format, LayerArgs, Target};
use crate::commands::{usage, CliError};
use crate::sink::Sink;

pub fn run(args: &LayerArgs, format: Format, sink: &mut Sink) -> Result<u8, CliError> {
    let grid = build_layer(args.n).map_err(usage)?;
    let sum = grid.sum();
    let exponent = u32::try_from(args.n - 1)
        .map_err(|_| CliError::Usage(format!("layer {} is out of range", args.n)))?;
    let is_power = sum == BigCount::from(3u32).pow(exponent);
    match format {
        Format::Pretty => pretty(args.target, &grid, &sum, is_power, sink)?,
        Format::Csv => csv(args.target, &grid, &sum, is_power, sink)?,
        Format::Json => json(args.target, &grid, &sum, is_power, sink)?,
    }
    Ok(0)
}

fn pretty(
    target: Target,
    grid: &LayerGrid,
    sum: &BigCount,
    is_power: bool,
    sink: &mut Sink,
) -> Result<(), CliError> {
    writeln!(sink, "layer {}", grid.layer_number())?;
    match target {
        Target::Pyramid => {
            for row in grid.rows() {
                let line = row
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ");
                writeln!(sink, "{line}")?;
            }
        }
        Target::CubeSlice => {
            writeln!(sink, "r k x y z value")?;
            for (r, k) in grid.positions() {
                let coord = layer_position_to_cube(grid.layer_number(), r, k);
                let value = grid.entry(r, k).expect("position is on the grid");
                writeln!(sink, "{r} {k} {} {} {} {value}", coord.x, coord.y, coord.z)?;
            }
        }
    }
    writeln!(sink, "sum {sum}")?;
    writeln!(sink, "sum_is_power_of_three {is_power}")?;
    Ok(())
}

fn csv(
    target: Target,
    grid: &LayerGrid,
    sum: &BigCount,
    is_power: bool,
    sink: &mut Sink,
) -> Result<(), CliError> {
    match target {
        Target::Pyramid => {
            writeln!(sink, "r,k,value")?;
            for (r, k) in grid.positions() {
                let value = grid.entry(r, k).expect("position is on the grid");
                writeln!(sink, "{r},{k},{value}")?;
            }
        }
        Target::CubeSlice => {
            writeln!(sink, "r,k,x,y,z,value")?;
            for (r, k) in grid.positions() {
                let coord = layer_position_to_cube(grid.layer_number(), r, k);
                let value = grid.entry(r, k).expect("position is on the grid");
                writeln!(sink, "{r},{k},{},{},{},{value}", coord.x, coord.y, coord.z)?;
            }
        }
    }
    eprintln!("sum {sum}");
    eprintln!("sum_is_power_of_three {is_power}");
    Ok(())
}

fn json(
    target: Target,
    grid: &LayerGrid,
    sum: &BigCount,
    is_power: bool,
    sink: &mut Sink,
) -> Result<(), CliError> {
    let rows: Vec<Vec<String>> = grid
        .rows()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    let mut value = serde_json::json!({
        "n": grid.layer_number(),
        "rows": rows,
        "sum": sum.to_string(),
        "sum_is_power_of_three": is_power,
    });
    if target == Target::CubeSlice {
        let entries: Vec<serde_json::Value> = grid
            .positions()
            .map(|(r, k)| {
                let coord = layer_position_to_cube(grid.layer_number(), r, k);
                serde_json::json!({
                    "r": r,
                    "k": k,
                    "x": coord.x,
                    "y": coord.y,
                    "z": coord.z,
                    "value": grid.entry(r, k).expect("position is on the grid").to_string(),
                })
            })
            .collect();
        value["entries"] = serde_json::Value::Array(entries);
    }
    writeln!(sink, "{value}")?;
    Ok(())
}
