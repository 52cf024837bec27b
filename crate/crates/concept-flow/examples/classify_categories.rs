//! Classify category titles with the shipped filter rule table.
//!
//! ```bash
//! cargo run -p concept-flow --example classify_categories
//! ```

use concept_flow::ingest::FilterRules;

fn main() {
    let rules = FilterRules::default();
    let titles = [
        "Health economics",
        "1880 deaths",
        "Articles to be split",
        "Lists of drugs",
        "Wikipedia maintenance",
        "CS1 errors: dates",
        "January 2001 events",
        "1990s fashion",
        "Analgesics",
        "Cross-language tracking categories",
        "Pages with broken file links",
        "Economy of France",
    ];

    println!("{:<40} class", "category title");
    println!("{:<40} -----", "--------------");
    for title in titles {
        println!("{:<40} {}", title, rules.classify(title));
    }

    println!("\nThe rule table is plain TSV and can be overridden per run:\n");
    for line in FilterRules::default_config_text()
        .lines()
        .filter(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty())
    {
        println!("  {line}");
    }
}
