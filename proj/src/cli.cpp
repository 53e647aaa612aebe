#include "scpqca/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "scpqca/cover.hpp"
#include "scpqca/ingest.hpp"
#include "scpqca/pathways.hpp"
#include "scpqca/pipeline.hpp"
#include "scpqca/report.hpp"
#include "scpqca/robustness.hpp"

namespace scpqca::cli
{

namespace
{

struct Options
{
  std::string data;
  std::string outcome;
  std::string label = "1";
  double consistency = 0.8;
  std::size_t cutoff = 2;
  std::size_t unique_cover = 2;
  double necessity_threshold = 0.9;
  std::optional<std::size_t> max_order;
  std::uint64_t seed = 0;
  std::string format = "text";
  unsigned threads = 0;
  std::vector<std::string> calibrate;
  std::vector<std::string> declare_levels;
  std::vector<std::string> accept_necessary;
  std::string greedy_order = "consistency";
  std::string emit_schema;
  bool skip_necessity = false;
  bool dedup = false;
  bool timing = false;

  bool oracle = false;

  std::size_t factors = 6;
  std::vector<Level> levels{ 2 };
  std::string pathway;
  std::size_t samples = 200;
  std::size_t confound = 0;
  std::vector<std::size_t> confounds{ 0 };
  std::size_t runs = 1;
  std::string emit = "csv";

  std::string grid;

  double fraction = 0.10;
  std::size_t reps = 10;
};

Format parse_format( const std::string& s )
{
  if ( s == "json" )
    return Format::Json;
  if ( s == "csv" )
    return Format::Csv;
  return Format::Text;
}

std::pair<std::string, std::string> split_assignment( const std::string& text, const char* flag )
{
  const auto eq = text.find( '=' );
  if ( eq == std::string::npos || eq == 0 || eq + 1 == text.size() )
    throw InputError( std::string( flag ) + ": expected COLUMN=VALUE, got '" + text + "'" );
  return { text.substr( 0, eq ), text.substr( eq + 1 ) };
}

std::vector<double> parse_cutpoints( const std::string& text, const std::string& column )
{
  std::vector<double> cuts;
  std::size_t start = 0;
  while ( start <= text.size() )
  {
    auto end = text.find( ',', start );
    if ( end == std::string::npos )
      end = text.size();
    const auto item = text.substr( start, end - start );
    std::size_t used = 0;
    double v = 0;
    try
    {
      v = std::stod( item, &used );
    }
    catch ( const std::exception& )
    {
      used = 0;
    }
    if ( item.empty() || used != item.size() )
      throw InputError( "--calibrate " + column + ": bad threshold '" + item + "'" );
    cuts.push_back( v );
    start = end + 1;
  }
  return cuts;
}

Level parse_level( const std::string& text, const char* what )
{
  Level v = 0;
  auto [ptr, ec] = std::from_chars( text.data(), text.data() + text.size(), v );
  if ( text.empty() || ec != std::errc{} || ptr != text.data() + text.size() )
    throw InputError( std::string( what ) + ": '" + text + "' is not a nonnegative integer" );
  return v;
}

// Raw label when the column was label-mapped, else the integer level.
Level resolve_level( const Factor& factor, const std::string& text, const char* what )
{
  const auto it = std::find( factor.labels.begin(), factor.labels.end(), text );
  if ( it != factor.labels.end() )
    return static_cast<Level>( it - factor.labels.begin() );
  const auto level = parse_level( text, what );
  if ( level >= factor.levels )
    throw InputError( std::string( what ) + ": level " + text + " outside '" + factor.name + "' (" +
                      std::to_string( factor.levels ) + " levels)" );
  return level;
}

CaseTable load_table( const Options& o, std::ostream& err )
{
  if ( o.data.empty() )
    throw InputError( "--data is required" );
  if ( o.outcome.empty() )
    throw InputError( "--outcome is required" );
  LoadOptions load;
  load.outcome_column = o.outcome;
  for ( const auto& c : o.calibrate )
  {
    auto [column, cuts] = split_assignment( c, "--calibrate" );
    load.calibration[column] = ColumnCalibration::with_cutpoints( parse_cutpoints( cuts, column ) );
  }
  for ( const auto& d : o.declare_levels )
  {
    auto [column, n] = split_assignment( d, "--declare-levels" );
    if ( load.calibration.count( column ) )
      throw InputError( "--declare-levels " + column + ": column already calibrated" );
    load.calibration[column] = ColumnCalibration::passthrough( parse_level( n, "--declare-levels" ) );
  }
  auto table = load_csv( o.data, load );
  if ( o.dedup )
  {
    auto d = deduplicate( table );
    if ( d.removed )
      err << "note: removed " << d.removed << " duplicate cases\n";
    table = std::move( d.table );
  }
  if ( !o.emit_schema.empty() )
  {
    std::ofstream schema_out( o.emit_schema );
    if ( !schema_out )
      throw InputError( "--emit-schema: cannot write '" + o.emit_schema + "'" );
    schema_out << schema_json( table.schema() ) << '\n';
  }
  return table;
}

PipelineParams pipeline_params( const Options& o, const FactorSchema& schema )
{
  PipelineParams p;
  p.decision_label = resolve_level( schema.outcome(), o.label, "--label" );
  p.necessity_threshold = o.necessity_threshold;
  p.consistency_threshold = o.consistency;
  p.cutoff = o.cutoff;
  p.unique_cover = o.unique_cover;
  p.max_order = o.max_order;
  p.threads = o.threads;
  p.order = o.greedy_order == "coverage" ? GreedyOrder::CoverageFirst : GreedyOrder::ConsistencyFirst;
  p.skip_necessity = o.skip_necessity;
  for ( const auto& a : o.accept_necessary )
  {
    auto [name, value] = split_assignment( a, "--accept-necessary" );
    const auto f = schema.index_of( name );
    if ( !f )
      throw InputError( "--accept-necessary: unknown factor '" + name + "'" );
    p.accepted_necessary.push_back( { *f, resolve_level( schema.factor( *f ), value, "--accept-necessary" ) } );
  }
  return p;
}

PipelineParams synthetic_params( const Options& o )
{
  PipelineParams p;
  p.necessity_threshold = o.necessity_threshold;
  p.consistency_threshold = o.consistency;
  p.cutoff = o.cutoff;
  p.unique_cover = o.unique_cover;
  p.max_order = o.max_order;
  p.threads = o.threads;
  p.order = o.greedy_order == "coverage" ? GreedyOrder::CoverageFirst : GreedyOrder::ConsistencyFirst;
  p.skip_necessity = o.skip_necessity;
  return p;
}

int cmd_necessity( const Options& o, std::ostream& out, std::ostream& err )
{
  const auto table = load_table( o, err );
  const auto params = pipeline_params( o, table.schema() );
  const auto conditions = necessary_conditions( table, params.decision_label, params.necessity_threshold );
  write_necessity( out, table, conditions, params.necessity_threshold, parse_format( o.format ) );
  return exit_ok;
}

int cmd_candidates( const Options& o, std::ostream& out, std::ostream& err )
{
  const auto table = load_table( o, err );
  const auto result = run_candidate_stage( table, pipeline_params( o, table.schema() ) );
  write_candidates( out, table, result, parse_format( o.format ) );
  return exit_ok;
}

int cmd_solve( const Options& o, std::ostream& out, std::ostream& err )
{
  const auto table = load_table( o, err );
  const auto params = pipeline_params( o, table.schema() );
  const auto result = run_pipeline( table, params );
  std::optional<OracleResult> oracle;
  if ( o.oracle )
  {
    if ( result.candidates.size() > oracle_candidate_limit )
      throw InputError( "--oracle: " + std::to_string( result.candidates.size() ) + " candidates exceed the limit of " +
                        std::to_string( oracle_candidate_limit ) );
    oracle = exhaustive_cover_oracle( result.candidates, table.positives( params.decision_label ),
                                      params.cover_params(), result.candidates.size() );
  }
  write_solution( out, table, result, parse_format( o.format ), oracle ? &*oracle : nullptr );
  return result.no_admissible_cover ? exit_no_cover : exit_ok;
}

ExperimentSpec experiment_spec( const Options& o, std::size_t confound, std::uint64_t seed )
{
  if ( o.pathway.empty() )
    throw InputError( "--pathway is required" );
  const auto schema = synthetic_schema( o.factors, o.levels );
  ExperimentSpec spec{ schema, parse_pathway( o.pathway, schema ), o.samples, confound, seed };
  spec.validate();
  return spec;
}

int cmd_synth( const Options& o, std::ostream& out, std::ostream& )
{
  const auto spec = experiment_spec( o, o.confound, o.seed );
  const auto table = sample_planted( spec );
  if ( o.emit == "json" )
  {
    nlohmann::ordered_json j;
    j["schema"] = nlohmann::ordered_json::parse( schema_json( table.schema() ) );
    j["pathway"] = pathway_name( spec.pathway );
    j["seed"] = spec.seed;
    j["confounds"] = spec.confound_count;
    auto cases = nlohmann::ordered_json::array();
    for ( const auto& c : table.cases() )
      cases.push_back( { { "id", c.id }, { "values", c.values }, { "outcome", c.outcome } } );
    j["cases"] = std::move( cases );
    out << j.dump( 2 ) << '\n';
  }
  else
    write_csv( table, out );
  return exit_ok;
}

int cmd_experiment( const Options& o, std::ostream& out, std::ostream& )
{
  if ( o.runs < 1 )
    throw InputError( "--runs must be at least 1" );
  const auto params = synthetic_params( o );
  std::vector<ExperimentRow> rows;
  std::string pathway;
  for ( auto confound : o.confounds )
    for ( std::size_t r = 0; r < o.runs; ++r )
    {
      const auto spec = experiment_spec( o, confound, o.seed + r );
      pathway = pathway_name( spec.pathway );
      ExperimentRow row;
      row.confounds = confound;
      row.seed = spec.seed;
      row.samples = spec.sample_size;
      try
      {
        const auto report = run_experiment( spec, params );
        row.disagreements = report.disagreements;
        row.candidates = report.result.candidates.size();
        row.solution = solution_expression( *report.result.solution, spec.schema );
        row.consistency = report.result.solution->consistency;
        row.coverage = report.result.solution->coverage;
        if ( o.timing )
          row.seconds = report.seconds;
      }
      catch ( const Error& e )
      {
        row.error = e.what();
      }
      rows.push_back( std::move( row ) );
    }
  write_experiment( out, pathway, rows, parse_format( o.format ) );
  return exit_ok;
}

int cmd_sweep( const Options& o, std::ostream& out, std::ostream& err )
{
  if ( o.grid.empty() )
    throw InputError( "--grid is required" );
  const auto grid = parse_sweep_grid( o.grid );
  const auto table = load_table( o, err );
  const auto cells = internal_sweep( table, grid, pipeline_params( o, table.schema() ) );
  write_sweep( out, table.schema(), cells, parse_format( o.format ) );
  return exit_ok;
}

int cmd_xval( const Options& o, std::ostream& out, std::ostream& err )
{
  const auto table = load_table( o, err );
  const ValidityParams validity{ o.fraction, o.reps, o.seed };
  const auto report = external_validity( table, validity, pipeline_params( o, table.schema() ) );
  write_validity( out, table.schema(), report, parse_format( o.format ) );
  return exit_ok;
}

// Global options first; the selected subcommand's own options after them.
std::string usage( const CLI::App& app )
{
  auto text = app.get_formatter()->make_help( &app, app.get_name(), CLI::AppFormatMode::Normal );
  const auto selected = app.get_subcommands();
  if ( !selected.empty() )
    text += "\n" + selected.back()->help( app.get_name() );
  return text;
}

} // namespace

int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err )
{
  Options o;
  CLI::App app{ "Set-covering configurational analysis of crisp and multi-value case data", "scpqca" };
  app.fallthrough();
  app.require_subcommand( 1 );

  app.add_option( "--data", o.data, "Input CSV" );
  app.add_option( "--outcome", o.outcome, "Outcome column" );
  app.add_option( "--label", o.label, "Outcome level explained (level number or raw label)" )->capture_default_str();
  app.add_option( "--consistency", o.consistency, "Candidate consistency threshold" )->capture_default_str();
  app.add_option( "--cutoff", o.cutoff, "Minimum matched cases per rule" )->capture_default_str();
  app.add_option( "--unique-cover", o.unique_cover, "Minimum newly covered positives per pick" )->capture_default_str();
  app.add_option( "--necessity-threshold", o.necessity_threshold, "Necessity consistency threshold" )
      ->capture_default_str();
  app.add_option( "--max-order", o.max_order, "Maximum literals per rule" );
  app.add_option( "--seed", o.seed, "Random seed" )->envname( "SCPQCA_SEED" )->capture_default_str();
  app.add_option( "--format", o.format, "Output format" )
      ->check( CLI::IsMember( { "text", "json", "csv" } ) )
      ->capture_default_str();
  app.add_option( "--threads", o.threads, "Worker threads (0 = all cores)" )->capture_default_str();
  app.add_option( "--calibrate", o.calibrate, "COLUMN=t1,t2,... numeric thresholds" );
  app.add_option( "--declare-levels", o.declare_levels, "COLUMN=n level count of an integer column" );
  app.add_option( "--accept-necessary", o.accept_necessary, "FACTOR=level necessary literal to conjoin" );
  app.add_option( "--greedy-order", o.greedy_order, "Primary key of the greedy scan" )
      ->check( CLI::IsMember( { "consistency", "coverage" } ) )
      ->capture_default_str();
  app.add_option( "--emit-schema", o.emit_schema, "Write the schema JSON sidecar to this path" );
  app.add_flag( "--skip-necessity", o.skip_necessity, "Enumerate over every factor" );
  app.add_flag( "--dedup", o.dedup, "Collapse identical cases" );
  app.add_flag( "--timing", o.timing, "Report runtimes (output is then not reproducible)" );

  auto* necessity = app.add_subcommand( "necessity", "Literals passing the necessity threshold" );
  auto* candidates = app.add_subcommand( "candidates", "Candidate rules after necessity exclusion" );
  auto* solve = app.add_subcommand( "solve", "Full pipeline with configuration chart" );
  solve->add_flag( "--oracle", o.oracle, "Compare with the exhaustive cover (small instances)" );

  auto add_synthetic = [&]( CLI::App* sub ) {
    sub->add_option( "--factors", o.factors, "Number of factors" )->capture_default_str();
    sub->add_option( "--levels", o.levels, "Levels for all factors, or one count per factor" )
        ->delimiter( ',' )
        ->capture_default_str();
    sub->add_option( "--pathway", o.pathway, "Planted DNF, e.g. ab+CD+ace+BDF" )->required();
    sub->add_option( "--samples", o.samples, "Rows drawn with replacement" )->capture_default_str();
  };
  auto* synth = app.add_subcommand( "synth", "Sample a dataset with a planted pathway" );
  add_synthetic( synth );
  synth->add_option( "--confound", o.confound, "Rows whose outcome is changed" )->capture_default_str();
  synth->add_option( "--emit", o.emit, "Output format" )
      ->check( CLI::IsMember( { "csv", "json" } ) )
      ->capture_default_str();

  auto* experiment = app.add_subcommand( "experiment", "Recovery of a planted pathway under confounding" );
  add_synthetic( experiment );
  experiment->add_option( "--confound", o.confounds, "Confound counts, comma separated" )->delimiter( ',' );
  experiment->add_option( "--runs", o.runs, "Seeds per confound count (seed, seed+1, ...)" )->capture_default_str();

  auto* sweep = app.add_subcommand( "sweep", "Internal validity over a parameter grid" );
  sweep->add_option( "--grid", o.grid, "cons:cutoff:unique_cover points, comma separated" )->required();

  auto* xval = app.add_subcommand( "xval", "External validity by repeated case removal" );
  xval->add_option( "--fraction", o.fraction, "Share of cases removed per repetition" )->capture_default_str();
  xval->add_option( "--reps", o.reps, "Repetitions" )->capture_default_str();

  try
  {
    std::vector<std::string> reversed( args.rbegin(), args.rend() );
    app.parse( reversed );
  }
  catch ( const CLI::Success& )
  {
    out << usage( app );
    return exit_ok;
  }
  catch ( const CLI::ParseError& e )
  {
    err << "error: " << e.what() << "\n\n" << usage( app );
    return exit_input_error;
  }

  try
  {
    if ( *necessity )
      return cmd_necessity( o, out, err );
    if ( *candidates )
      return cmd_candidates( o, out, err );
    if ( *solve )
      return cmd_solve( o, out, err );
    if ( *synth )
      return cmd_synth( o, out, err );
    if ( *experiment )
      return cmd_experiment( o, out, err );
    if ( *sweep )
      return cmd_sweep( o, out, err );
    return cmd_xval( o, out, err );
  }
  catch ( const VacuousSolutionError& e )
  {
    err << "error: " << e.what() << '\n';
    return exit_no_cover;
  }
  catch ( const ParseError& e )
  {
    err << "error: pathway " << e.what() << '\n';
    return exit_input_error;
  }
  catch ( const std::exception& e )
  {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  }
}

} // namespace scpqca::cli
