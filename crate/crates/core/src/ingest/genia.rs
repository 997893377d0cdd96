//! GENIA Term corpus (version 3.02) XML reader.
//!
//! Every `<cons>` with a `lex` attribute is replaced by its lexical unit with a
//! `_lex` suffix. For nested annotations the outer unit comes first, followed
//! by the inner units in document order; the surface text under an
//! annotation is not emitted. Coordinated annotations (a `sem` of the form
//! `(AND ...)`) are dropped together with their text. Annotations without a
//! `lex` attribute are transparent: their text stays as plain tokens.

use std::collections::{BTreeMap, BTreeSet};

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use super::normalize::push_normalized_tokens;
use crate::error::{Error, Result};

/// Suffix marking lexical-unit tokens.
pub const LEX_SUFFIX: &str = "_lex";

const TRUNCATION_MARKERS: [&str; 2] = [
    "(ABSTRACT TRUNCATED AT 250 WORDS)",
    "(ABSTRACT TRUNCATED AT 400 WORDS)",
];

/// High-level semantic classes used for the gold standard.
pub const SEMANTIC_CLASSES: [&str; 5] = ["Amino Acid", "Nucleotide", "Multi-cell", "Cell", "Other"];

/// Name of the union class.
pub const ALL_CLASS: &str = "All";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedDocument {
    pub medline_id: String,
    pub tokens: Vec<String>,
}

/// Gold-standard lexical units per semantic class, `All` included.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldStandard {
    pub classes: BTreeMap<String, BTreeSet<String>>,
    pub annotation_counts: BTreeMap<String, u64>,
}

impl GoldStandard {
    pub fn all(&self) -> Option<&BTreeSet<String>> {
        self.classes.get(ALL_CLASS)
    }

    pub fn class(&self, name: &str) -> Option<&BTreeSet<String>> {
        self.classes.get(name)
    }

    /// Number of the five high-level classes containing `unit`.
    pub fn class_membership(&self, unit: &str) -> usize {
        SEMANTIC_CLASSES
            .iter()
            .filter(|c| self.classes.get(**c).is_some_and(|s| s.contains(unit)))
            .count()
    }

    fn record(&mut self, unit: &str, sem: Option<&str>) {
        let mut add = |class: &str| {
            self.classes
                .entry(class.to_string())
                .or_default()
                .insert(unit.to_string());
            *self.annotation_counts.entry(class.to_string()).or_default() += 1;
        };
        add(ALL_CLASS);
        if let Some(class) = sem.and_then(semantic_class) {
            add(class);
        }
    }
}

/// Maps a GENIA `sem` value such as `G#protein_molecule` to its high-level
/// class. Unrecognized values map to `None`.
pub fn semantic_class(sem: &str) -> Option<&'static str> {
    let sub = sem.trim().strip_prefix("G#").unwrap_or(sem.trim());
    let class = match sub {
        s if s.starts_with("protein") => "Amino Acid",
        "peptide" | "amino_acid_monomer" | "lipid" | "carbohydrate"
        | "other_organic_compound" | "inorganic" | "atom" => "Amino Acid",
        s if s.starts_with("DNA") || s.starts_with("RNA") => "Nucleotide",
        "polynucleotide" | "nucleotide" => "Nucleotide",
        "multi_cell" | "mono_cell" | "virus" | "body_part" | "tissue" => "Multi-cell",
        "cell_type" | "cell_line" | "cell_component" | "other_artificial_source" => "Cell",
        "other" => "Other",
        _ => return None,
    };
    Some(class)
}

fn is_coordinated(sem: &str) -> bool {
    sem.trim_start().starts_with('(')
}

#[derive(Debug)]
enum Node {
    Element(Element),
    Text(String),
}

#[derive(Debug)]
struct Element {
    name: String,
    attrs: Vec<(String, String)>,
    children: Vec<Node>,
}

impl Element {
    fn attr(&self, key: &str) -> Option<&str> {
        self.attrs
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn find(&self, name: &str) -> Option<&Element> {
        for child in &self.children {
            if let Node::Element(e) = child {
                if e.name == name {
                    return Some(e);
                }
                if let Some(found) = e.find(name) {
                    return Some(found);
                }
            }
        }
        None
    }

    fn text(&self) -> String {
        let mut s = String::new();
        self.collect_text(&mut s);
        s
    }

    fn collect_text(&self, out: &mut String) {
        for child in &self.children {
            match child {
                Node::Text(t) => out.push_str(t),
                Node::Element(e) => e.collect_text(out),
            }
        }
    }
}

fn xml_error(reader: &Reader<&[u8]>, message: impl ToString) -> Error {
    Error::Xml {
        offset: reader.error_position(),
        message: message.to_string(),
    }
}

fn open_element(reader: &Reader<&[u8]>, start: &BytesStart) -> Result<Element> {
    let name = String::from_utf8_lossy(start.name().as_ref()).into_owned();
    let mut attrs = Vec::new();
    for attr in start.attributes() {
        let attr = attr.map_err(|e| xml_error(reader, e))?;
        let key = String::from_utf8_lossy(attr.key.as_ref()).into_owned();
        let value = attr
            .unescape_value()
            .map_err(|e| xml_error(reader, e))?
            .into_owned();
        attrs.push((key, value));
    }
    Ok(Element {
        name,
        attrs,
        children: Vec::new(),
    })
}

fn parse_tree(xml: &[u8]) -> Result<Element> {
    let mut reader = Reader::from_reader(xml);
    let mut stack = vec![Element {
        name: String::new(),
        attrs: Vec::new(),
        children: Vec::new(),
    }];
    loop {
        let event = reader.read_event().map_err(|e| xml_error(&reader, e))?;
        match event {
            Event::Start(start) => {
                let el = open_element(&reader, &start)?;
                stack.push(el);
            }
            Event::Empty(start) => {
                let el = open_element(&reader, &start)?;
                stack
                    .last_mut()
                    .expect("root")
                    .children
                    .push(Node::Element(el));
            }
            Event::End(_) => {
                let el = stack.pop().expect("balanced by reader");
                if stack.is_empty() {
                    return Err(xml_error(&reader, "unexpected closing tag"));
                }
                stack
                    .last_mut()
                    .expect("root")
                    .children
                    .push(Node::Element(el));
            }
            Event::Text(t) => {
                let text = t.unescape().map_err(|e| xml_error(&reader, e))?;
                stack
                    .last_mut()
                    .expect("root")
                    .children
                    .push(Node::Text(text.into_owned()));
            }
            Event::CData(c) => {
                let text = String::from_utf8_lossy(&c).into_owned();
                stack
                    .last_mut()
                    .expect("root")
                    .children
                    .push(Node::Text(text));
            }
            Event::Eof => break,
            _ => {}
        }
    }
    if stack.len() != 1 {
        return Err(Error::Xml {
            offset: reader.buffer_position(),
            message: format!(
                "unexpected end of input inside <{}>",
                stack.last().expect("nonempty").name
            ),
        });
    }
    Ok(stack.pop().expect("root"))
}

fn strip_truncation_markers(text: &str) -> std::borrow::Cow<'_, str> {
    if TRUNCATION_MARKERS.iter().any(|m| text.contains(m)) {
        let mut s = text.to_string();
        for m in TRUNCATION_MARKERS {
            s = s.replace(m, " ");
        }
        s.into()
    } else {
        text.into()
    }
}

fn lex_token(lex: &str) -> String {
    let unit: String = lex
        .trim()
        .chars()
        .map(|c| if c.is_whitespace() { '_' } else { c })
        .collect();
    format!("{unit}{LEX_SUFFIX}")
}

struct Extractor<'g> {
    tokens: Vec<String>,
    gold: &'g mut GoldStandard,
}

impl Extractor<'_> {
    /// Plain context: text is normalized, annotations become lexical units.
    fn plain(&mut self, el: &Element) {
        for child in &el.children {
            match child {
                Node::Text(t) => push_normalized_tokens(&strip_truncation_markers(t), &mut self.tokens),
                Node::Element(e) if e.name == "cons" => self.cons(e, false),
                Node::Element(e) => self.plain(e),
            }
        }
    }

    /// Inside an annotation with a lexical unit: only nested units are emitted.
    fn units_only(&mut self, el: &Element) {
        for child in &el.children {
            if let Node::Element(e) = child {
                if e.name == "cons" {
                    self.cons(e, true);
                } else {
                    self.units_only(e);
                }
            }
        }
    }

    fn cons(&mut self, el: &Element, inside_unit: bool) {
        let sem = el.attr("sem");
        if sem.is_some_and(is_coordinated) {
            return;
        }
        match el.attr("lex").filter(|l| !l.trim().is_empty()) {
            Some(lex) => {
                let token = lex_token(lex);
                self.gold.record(&token, sem);
                self.tokens.push(token);
                self.units_only(el);
            }
            None if inside_unit => self.units_only(el),
            None => self.plain(el),
        }
    }
}

/// Parses GENIA XML into one document per article (title and abstract
/// merged) and the gold-standard lexical units.
pub fn parse_genia(xml: &[u8]) -> Result<(Vec<AnnotatedDocument>, GoldStandard)> {
    let root = parse_tree(xml)?;
    let mut articles = Vec::new();
    collect_articles(&root, &mut articles);

    let mut gold = GoldStandard::default();
    gold.classes.entry(ALL_CLASS.to_string()).or_default();
    gold.annotation_counts.entry(ALL_CLASS.to_string()).or_default();
    for class in SEMANTIC_CLASSES {
        gold.classes.entry(class.to_string()).or_default();
        gold.annotation_counts.entry(class.to_string()).or_default();
    }

    let mut docs = Vec::with_capacity(articles.len());
    for (index, article) in articles.iter().enumerate() {
        let label = || format!("#{}", index + 1);
        let medline_id = article
            .find("bibliomisc")
            .map(|e| e.text().trim().trim_start_matches("MEDLINE:").trim().to_string())
            .filter(|s| !s.is_empty())
            .ok_or_else(|| Error::MissingElement {
                article: label(),
                element: "bibliomisc".into(),
            })?;
        let mut ex = Extractor {
            tokens: Vec::new(),
            gold: &mut gold,
        };
        for part in ["title", "abstract"] {
            let el = article.find(part).ok_or_else(|| Error::MissingElement {
                article: format!("{} (MEDLINE:{medline_id})", label()),
                element: part.into(),
            })?;
            ex.plain(el);
        }
        docs.push(AnnotatedDocument {
            medline_id,
            tokens: ex.tokens,
        });
    }
    Ok((docs, gold))
}

fn collect_articles<'a>(el: &'a Element, out: &mut Vec<&'a Element>) {
    for child in &el.children {
        if let Node::Element(e) = child {
            if e.name == "article" {
                out.push(e);
            } else {
                collect_articles(e, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn article(id: &str, title: &str, abstract_: &str) -> String {
        format!(
            "<article><articleinfo><bibliomisc>MEDLINE:{id}</bibliomisc></articleinfo>\
             <title><sentence>{title}</sentence></title>\
             <abstract>{abstract_}</abstract></article>"
        )
    }

    const CD4: &str = r#"<sentence>In this report, we show that the minimal <cons lex="CD4_promoter" sem="G#DNA_domain_or_region"><cons lex="CD4" sem="G#protein_molecule">CD4</cons> promoter</cons> has four <cons lex="factor_binding_site" sem="G#DNA_domain_or_region">factor binding sites</cons>, each of which is required for full function.</sentence>"#;

    #[test]
    fn cd4_sentence() {
        let xml = format!("<set>{}</set>", article("1", "", CD4));
        let (docs, gold) = parse_genia(xml.as_bytes()).unwrap();
        assert_eq!(docs.len(), 1);
        assert_eq!(
            docs[0].tokens.join(" "),
            "in this report we show that the minimal CD4_promoter_lex CD4_lex has four \
             factor_binding_site_lex each of which is required for full function"
        );
        assert_eq!(gold.annotation_counts["All"], 3);
        assert_eq!(gold.annotation_counts["Nucleotide"], 2);
        assert_eq!(gold.annotation_counts["Amino Acid"], 1);
        assert!(gold.class("Amino Acid").unwrap().contains("CD4_lex"));
    }

    #[test]
    fn no_annotations_and_truncation() {
        let abs = "<sentence>Plain 2 words.</sentence><sentence>(ABSTRACT TRUNCATED AT 250 WORDS)</sentence>";
        let xml = format!("<set>{}</set>", article("9", "A Title", abs));
        let (docs, gold) = parse_genia(xml.as_bytes()).unwrap();
        assert_eq!(docs[0].medline_id, "9");
        assert_eq!(docs[0].tokens, ["a", "title", "plain", "two", "words"]);
        assert!(gold.all().unwrap().is_empty());
    }

    #[test]
    fn coordinated_and_lexless() {
        let abs = r#"<sentence><cons lex="(AND A_gene B_gene)" sem="(AND G#DNA_molecule G#DNA_molecule)"><cons lex="A" sem="G#protein_molecule">A</cons> and B genes</cons> with <cons sem="G#other">kept Text</cons> and <cons lex="x" sem="G#weird">X</cons></sentence>"#;
        let xml = format!("<set>{}</set>", article("2", "", abs));
        let (docs, gold) = parse_genia(xml.as_bytes()).unwrap();
        assert_eq!(docs[0].tokens, ["with", "kept", "text", "and", "x_lex"]);
        assert!(gold.all().unwrap().contains("x_lex"));
        assert_eq!(gold.class_membership("x_lex"), 0);
        assert_eq!(gold.annotation_counts["All"], 1);
    }

    #[test]
    fn every_lex_token_is_gold() {
        let xml = format!("<set>{}{}</set>", article("1", "", CD4), article("2", "T", CD4));
        let (docs, gold) = parse_genia(xml.as_bytes()).unwrap();
        let all = gold.all().unwrap();
        for t in docs.iter().flat_map(|d| &d.tokens) {
            if t.ends_with(LEX_SUFFIX) {
                assert!(all.contains(t));
            }
        }
        let again = parse_genia(xml.as_bytes()).unwrap();
        assert_eq!(again.0, docs);
        assert_eq!(again.1, gold);
    }

    #[test]
    fn errors() {
        let bad = b"<set><article><title>x</abstract></article></set>";
        assert!(matches!(parse_genia(bad), Err(Error::Xml { .. })));
        let unclosed = b"<set><article>";
        assert!(matches!(parse_genia(unclosed), Err(Error::Xml { .. })));
        let missing = b"<set><article><title>x</title><abstract/></article></set>";
        match parse_genia(missing) {
            Err(Error::MissingElement { article, element }) => {
                assert_eq!(article, "#1");
                assert_eq!(element, "bibliomisc");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn class_map() {
        assert_eq!(semantic_class("G#protein_family_or_group"), Some("Amino Acid"));
        assert_eq!(semantic_class("G#RNA_N/A"), Some("Nucleotide"));
        assert_eq!(semantic_class("G#virus"), Some("Multi-cell"));
        assert_eq!(semantic_class("G#cell_line"), Some("Cell"));
        assert_eq!(semantic_class("G#other"), Some("Other"));
        assert_eq!(semantic_class("G#unknown_thing"), None);
    }
}
