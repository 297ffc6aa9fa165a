#include "dtc/io.hpp"

#include "dtc/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace dtc
{

namespace
{

std::string_view strip_comment( std::string_view line )
{
  if ( const auto hash = line.find( '#' ); hash != std::string_view::npos )
  {
    line = line.substr( 0, hash );
  }
  if ( !line.empty() && line.back() == '\r' )
  {
    line.remove_suffix( 1 );
  }
  return line;
}

std::vector<std::string_view> split_ws( std::string_view s )
{
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while ( i < s.size() )
  {
    while ( i < s.size() && ( s[i] == ' ' || s[i] == '\t' ) )
    {
      ++i;
    }
    const auto start = i;
    while ( i < s.size() && s[i] != ' ' && s[i] != '\t' )
    {
      ++i;
    }
    if ( i > start )
    {
      tokens.push_back( s.substr( start, i - start ) );
    }
  }
  return tokens;
}

std::uint64_t parse_uint( std::string_view token, std::size_t line, std::string_view what )
{
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars( token.data(), end, value );
  if ( ec != std::errc{} || ptr != end )
  {
    throw parse_error( line, "expected a nonnegative integer for " + std::string( what ) + ", got '" +
                                 std::string( token ) + "'" );
  }
  return value;
}

std::uint32_t parse_size( std::string_view token, std::size_t line, std::string_view what )
{
  const auto v = parse_uint( token, line, what );
  if ( v == 0 || v > 0xffffffffull )
  {
    throw parse_error( line, std::string( what ) + " must be between 1 and 2^32-1" );
  }
  return static_cast<std::uint32_t>( v );
}

} // namespace

Relation parse_relation( std::string_view text, const TableGuard& guard )
{
  std::optional<Relation> relation;
  std::vector<bool> seen;
  std::size_t line_no = 0;

  while ( !text.empty() )
  {
    const auto nl = text.find( '\n' );
    const auto raw = text.substr( 0, nl );
    text = nl == std::string_view::npos ? std::string_view{} : text.substr( nl + 1 );
    ++line_no;

    const auto line = strip_comment( raw );
    if ( split_ws( line ).empty() && line.find( ':' ) == std::string_view::npos )
    {
      continue;
    }

    if ( !relation )
    {
      const auto tokens = split_ws( line );
      if ( tokens.size() != 4 || tokens[0] != "REL" )
      {
        throw parse_error( line_no, "expected header 'REL <arity> <|X|> <|Y|>'" );
      }
      const auto arity = parse_uint( tokens[1], line_no, "arity" );
      const Alphabet input( parse_size( tokens[2], line_no, "|X|" ) );
      const auto y = parse_size( tokens[3], line_no, "|Y|" );
      if ( y > max_output_symbols )
      {
        throw parse_error( line_no, "|Y| exceeds " + std::to_string( max_output_symbols ) );
      }
      try
      {
        relation.emplace( static_cast<std::size_t>( arity ), input, Alphabet( y ), guard );
      }
      catch ( const guard_error& e )
      {
        throw parse_error( line_no, e.what() );
      }
      seen.assign( relation->size(), false );
      continue;
    }

    const auto colon = line.find( ':' );
    if ( colon == std::string_view::npos )
    {
      throw parse_error( line_no, "record is missing ':'" );
    }
    const auto inputs = split_ws( line.substr( 0, colon ) );
    const auto outputs = split_ws( line.substr( colon + 1 ) );
    if ( inputs.size() != relation->arity() )
    {
      throw parse_error( line_no, "record has " + std::to_string( inputs.size() ) + " inputs, header arity is " +
                                      std::to_string( relation->arity() ) );
    }
    if ( outputs.empty() )
    {
      throw parse_error( line_no, "record lists no outputs" );
    }

    std::size_t index = 0;
    for ( std::size_t i = 0; i < inputs.size(); ++i )
    {
      const auto s = parse_uint( inputs[i], line_no, "input symbol" );
      if ( s >= relation->input_alphabet().size() )
      {
        throw parse_error( line_no, "input symbol " + std::to_string( s ) + " out of range for |X| = " +
                                        std::to_string( relation->input_alphabet().size() ) );
      }
      index += static_cast<std::size_t>( s ) * relation->stride( i );
    }
    if ( seen[index] )
    {
      throw parse_error( line_no, "duplicate record for this input" );
    }
    seen[index] = true;
    for ( const auto token : outputs )
    {
      const auto y = parse_uint( token, line_no, "output symbol" );
      if ( y >= relation->output_alphabet().size() )
      {
        throw parse_error( line_no, "output symbol " + std::to_string( y ) + " out of range for |Y| = " +
                                        std::to_string( relation->output_alphabet().size() ) );
      }
      relation->add( index, static_cast<Symbol>( y ) );
    }
  }

  if ( !relation )
  {
    throw parse_error( line_no, "missing 'REL' header" );
  }
  return std::move( *relation );
}

std::string write_relation( const Relation& f )
{
  std::string out = "REL " + std::to_string( f.arity() ) + " " + std::to_string( f.input_alphabet().size() ) + " " +
                    std::to_string( f.output_alphabet().size() ) + "\n";
  for ( std::size_t index = 0; index < f.size(); ++index )
  {
    const auto outputs = f.outputs( index );
    if ( outputs == 0 )
    {
      continue;
    }
    for ( std::size_t i = 0; i < f.arity(); ++i )
    {
      out += std::to_string( f.digit( index, i ) );
      out += ' ';
    }
    out += ':';
    for ( Symbol y = 0; y < f.output_alphabet().size(); ++y )
    {
      if ( ( outputs >> y ) & 1u )
      {
        out += ' ';
        out += std::to_string( y );
      }
    }
    out += '\n';
  }
  return out;
}

Relation read_relation_file( const std::filesystem::path& path, const TableGuard& guard )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw parse_error( 0, "cannot open " + path.string() );
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try
  {
    return parse_relation( buffer.str(), guard );
  }
  catch ( const parse_error& e )
  {
    throw parse_error( 0, path.string() + ": " + e.what() );
  }
}

void write_relation_file( const std::filesystem::path& path, const Relation& f )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
  {
    throw std::runtime_error( "cannot write " + path.string() );
  }
  out << write_relation( f );
}

namespace
{

std::string variable_label( std::size_t variable, const std::vector<std::string>& names )
{
  if ( !names.empty() )
  {
    if ( variable >= names.size() )
    {
      throw precondition_error( "no name given for variable x" + std::to_string( variable + 1 ) );
    }
    return names[variable];
  }
  return "x" + std::to_string( variable + 1 );
}

std::string quote( std::string_view s )
{
  std::string q = "\"";
  for ( const char c : s )
  {
    if ( c == '"' || c == '\\' )
    {
      q += '\\';
    }
    q += c;
  }
  q += '"';
  return q;
}

std::size_t emit_dot( const DecisionTree& t, const std::vector<std::string>& names, std::size_t& next,
                      std::string& nodes, std::string& edges )
{
  const auto id = next++;
  const auto label = t.is_leaf() ? std::to_string( t.output() ) : variable_label( t.variable(), names );
  nodes += "  n" + std::to_string( id ) + " [label=" + quote( label ) + "];\n";
  for ( std::size_t b = 0; b < t.children().size(); ++b )
  {
    const auto child = emit_dot( t.children()[b], names, next, nodes, edges );
    edges += "  n" + std::to_string( id ) + " -> n" + std::to_string( child ) + " [label=\"" + std::to_string( b ) +
             "\"];\n";
  }
  return id;
}

} // namespace

std::string export_dot( const DecisionTree& tree, const std::vector<std::string>& variable_names )
{
  std::size_t next = 0;
  std::string nodes;
  std::string edges;
  emit_dot( tree, variable_names, next, nodes, edges );
  return "digraph tree {\n" + nodes + edges + "}\n";
}

namespace
{

/// label="..." inside a bracketed attribute list.
std::string read_label( std::string_view attrs, std::size_t line )
{
  const auto key = attrs.find( "label" );
  if ( key == std::string_view::npos )
  {
    throw parse_error( line, "missing label attribute" );
  }
  auto pos = attrs.find( '"', key );
  if ( pos == std::string_view::npos )
  {
    throw parse_error( line, "label must be quoted" );
  }
  std::string label;
  for ( ++pos; pos < attrs.size() && attrs[pos] != '"'; ++pos )
  {
    if ( attrs[pos] == '\\' && pos + 1 < attrs.size() )
    {
      ++pos;
    }
    label += attrs[pos];
  }
  if ( pos >= attrs.size() )
  {
    throw parse_error( line, "unterminated label" );
  }
  return label;
}

struct DotGraph
{
  std::map<std::string, std::string> labels;
  std::map<std::string, std::map<std::uint64_t, std::string>> children;
  std::string root;
};

DecisionTree build_from_dot( const DotGraph& g, const std::string& id, const std::vector<std::string>& names,
                             std::size_t depth )
{
  if ( depth > g.labels.size() )
  {
    throw parse_error( 0, "DOT graph is not a tree" );
  }
  const auto label = g.labels.find( id );
  if ( label == g.labels.end() )
  {
    throw parse_error( 0, "edge refers to undeclared node " + id );
  }
  const auto kids = g.children.find( id );
  if ( kids == g.children.end() )
  {
    return DecisionTree::leaf( static_cast<Symbol>( parse_uint( label->second, 0, "leaf label" ) ) );
  }

  std::size_t variable = 0;
  if ( !names.empty() )
  {
    const auto it = std::find( names.begin(), names.end(), label->second );
    if ( it == names.end() )
    {
      throw parse_error( 0, "unknown variable name '" + label->second + "'" );
    }
    variable = static_cast<std::size_t>( it - names.begin() );
  }
  else
  {
    if ( label->second.size() < 2 || label->second[0] != 'x' )
    {
      throw parse_error( 0, "internal node label must be x<i>, got '" + label->second + "'" );
    }
    const auto i = parse_uint( std::string_view( label->second ).substr( 1 ), 0, "variable index" );
    if ( i == 0 )
    {
      throw parse_error( 0, "variable indices start at 1" );
    }
    variable = static_cast<std::size_t>( i - 1 );
  }

  std::vector<DecisionTree> children;
  std::uint64_t expected = 0;
  for ( const auto& [symbol, child] : kids->second )
  {
    if ( symbol != expected++ )
    {
      throw parse_error( 0, "node " + id + " is missing the edge for symbol " + std::to_string( expected - 1 ) );
    }
    children.push_back( build_from_dot( g, child, names, depth + 1 ) );
  }
  return DecisionTree::node( variable, std::move( children ) );
}

} // namespace

DecisionTree parse_dot( std::string_view text, const std::vector<std::string>& variable_names )
{
  DotGraph g;
  std::size_t line_no = 0;
  bool opened = false;
  bool closed = false;
  while ( !text.empty() )
  {
    const auto nl = text.find( '\n' );
    auto line = text.substr( 0, nl );
    text = nl == std::string_view::npos ? std::string_view{} : text.substr( nl + 1 );
    ++line_no;

    const auto first = line.find_first_not_of( " \t\r" );
    if ( first == std::string_view::npos )
    {
      continue;
    }
    line = line.substr( first );
    if ( !opened )
    {
      if ( !line.starts_with( "digraph" ) || line.find( '{' ) == std::string_view::npos )
      {
        throw parse_error( line_no, "expected 'digraph <name> {'" );
      }
      opened = true;
      continue;
    }
    if ( line.starts_with( "}" ) )
    {
      closed = true;
      break;
    }
    const auto bracket = line.find( '[' );
    if ( bracket == std::string_view::npos )
    {
      throw parse_error( line_no, "expected a statement with a label attribute" );
    }
    const auto head = split_ws( line.substr( 0, bracket ) );
    const auto label = read_label( line.substr( bracket ), line_no );
    if ( head.size() == 1 )
    {
      const std::string id( head[0] );
      if ( !g.labels.emplace( id, label ).second )
      {
        throw parse_error( line_no, "node " + id + " declared twice" );
      }
      if ( g.root.empty() )
      {
        g.root = id;
      }
    }
    else if ( head.size() == 3 && head[1] == "->" )
    {
      const auto symbol = parse_uint( label, line_no, "edge label" );
      if ( !g.children[std::string( head[0] )].emplace( symbol, std::string( head[2] ) ).second )
      {
        throw parse_error( line_no, "duplicate edge label" );
      }
    }
    else
    {
      throw parse_error( line_no, "unsupported DOT statement" );
    }
  }
  if ( !closed || g.root.empty() )
  {
    throw parse_error( line_no, "incomplete DOT graph" );
  }
  return build_from_dot( g, g.root, variable_names, 0 );
}

} // namespace dtc
