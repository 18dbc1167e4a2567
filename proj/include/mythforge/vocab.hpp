#pragma once

#include <string>

#include "mythforge/rdf.hpp"

namespace mythforge::vocab {

inline constexpr const char* kDefaultBase = "https://purl.org/vpq/mythlod/data/";

inline constexpr const char* kDct = "http://purl.org/dc/terms/";
inline constexpr const char* kEcrm = "http://erlangen-crm.org/current/";
inline constexpr const char* kEfrbroo = "http://erlangen-crm.org/efrbroo/";
inline constexpr const char* kCrm = "http://www.cidoc-crm.org/cidoc-crm/";
inline constexpr const char* kHico = "http://purl.org/emmedi/hico/";
inline constexpr const char* kHucit = "http://purl.org/net/hucit#";
inline constexpr const char* kNp = "http://www.nanopub.org/nschema#";
inline constexpr const char* kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr const char* kProv = "http://www.w3.org/ns/prov#";
inline constexpr const char* kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr const char* kSchema = "http://schema.org/";
inline constexpr const char* kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr const char* kCo = "http://purl.org/co/";
inline constexpr const char* kWdt = "http://www.wikidata.org/prop/direct/";
inline constexpr const char* kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";

inline rdf::Iri iri(const char* ns, const char* local) {
  return rdf::Iri(std::string(ns) + local);
}

inline rdf::Iri rdf_type() { return iri(kRdf, "type"); }
inline rdf::Iri rdf_lang_string() { return iri(kRdf, "langString"); }
inline rdf::Iri rdfs_label() { return iri(kRdfs, "label"); }
inline rdf::Iri rdfs_see_also() { return iri(kRdfs, "seeAlso"); }
inline rdf::Iri owl_same_as() { return iri(kOwl, "sameAs"); }

inline rdf::Iri xsd_string() { return iri(kXsd, "string"); }
inline rdf::Iri xsd_date() { return iri(kXsd, "date"); }
inline rdf::Iri xsd_date_time() { return iri(kXsd, "dateTime"); }
inline rdf::Iri xsd_any_uri() { return iri(kXsd, "anyURI"); }
inline rdf::Iri xsd_integer() { return iri(kXsd, "integer"); }

inline rdf::Iri ecrm(const char* local) { return iri(kEcrm, local); }
inline rdf::Iri efrbroo(const char* local) { return iri(kEfrbroo, local); }
inline rdf::Iri crm(const char* local) { return iri(kCrm, local); }
inline rdf::Iri dct(const char* local) { return iri(kDct, local); }
inline rdf::Iri hico(const char* local) { return iri(kHico, local); }
inline rdf::Iri hucit(const char* local) { return iri(kHucit, local); }
inline rdf::Iri np(const char* local) { return iri(kNp, local); }
inline rdf::Iri prov(const char* local) { return iri(kProv, local); }
inline rdf::Iri schema(const char* local) { return iri(kSchema, local); }
inline rdf::Iri wdt(const char* local) { return iri(kWdt, local); }

inline constexpr const char* kViafBase = "http://viaf.org/viaf/";
inline constexpr const char* kWikidataEntityBase = "http://www.wikidata.org/entity/";
inline constexpr const char* kPerseusCitationBase = "http://data.perseus.org/citations/";

}  // namespace mythforge::vocab
