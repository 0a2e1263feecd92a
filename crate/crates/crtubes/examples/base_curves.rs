//! Write the base curves of the four r = 2 catalog cases as SVG files
//! into the current directory.

use crtubes::models::tube_catalog;
use crtubes::svg::{base_curve, render};

fn main() {
    for spec in tube_catalog(2).unwrap() {
        let branches = base_curve(&spec);
        let path = format!("base-{}.svg", spec.case.tag());
        std::fs::write(&path, render(&branches)).unwrap();
        let points: usize = branches.iter().map(Vec::len).sum();
        println!("{path}: {} branch(es), {points} points", branches.len());
    }
}
