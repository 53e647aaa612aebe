#include "scpqca/random.hpp"

#include <bit>
#include <stdexcept>

#include "scpqca/model.hpp"

namespace scpqca
{

std::uint64_t splitmix64( std::uint64_t& state )
{
  std::uint64_t z = ( state += 0x9E3779B97F4A7C15ull );
  z = ( z ^ ( z >> 30 ) ) * 0xBF58476D1CE4E5B9ull;
  z = ( z ^ ( z >> 27 ) ) * 0x94D049BB133111EBull;
  return z ^ ( z >> 31 );
}

std::uint64_t derive_seed( std::uint64_t seed, std::uint64_t stream )
{
  std::uint64_t state = seed ^ splitmix64( stream );
  return splitmix64( state );
}

Xoshiro256StarStar::Xoshiro256StarStar( std::uint64_t seed )
{
  for ( auto& word : s_ )
    word = splitmix64( seed );
}

Xoshiro256StarStar::result_type Xoshiro256StarStar::operator()()
{
  const auto result = std::rotl( s_[1] * 5, 7 ) * 9;
  const auto t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl( s_[3], 45 );
  return result;
}

std::uint64_t Xoshiro256StarStar::below( std::uint64_t bound )
{
  if ( bound == 0 )
    throw std::invalid_argument( "below(0)" );
  auto m = static_cast<Wide>( ( *this )() ) * bound;
  auto low = static_cast<std::uint64_t>( m );
  if ( low < bound )
  {
    const std::uint64_t threshold = ( 0 - bound ) % bound;
    while ( low < threshold )
    {
      m = static_cast<Wide>( ( *this )() ) * bound;
      low = static_cast<std::uint64_t>( m );
    }
  }
  return static_cast<std::uint64_t>( m >> 64 );
}

} // namespace scpqca
