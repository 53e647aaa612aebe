#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace scpqca
{

/// Fixed-universe bitset over case indices of a CaseTable.
class CaseSet
{
public:
  CaseSet() = default;
  explicit CaseSet( std::size_t universe, bool filled = false )
      : size_( universe ), words_( ( universe + 63 ) / 64, filled ? ~std::uint64_t{ 0 } : 0 )
  {
    trim();
  }

  std::size_t universe() const noexcept { return size_; }

  void insert( std::size_t i ) { words_[i / 64] |= std::uint64_t{ 1 } << ( i % 64 ); }
  void erase( std::size_t i ) { words_[i / 64] &= ~( std::uint64_t{ 1 } << ( i % 64 ) ); }
  bool contains( std::size_t i ) const { return ( words_[i / 64] >> ( i % 64 ) ) & 1u; }

  std::size_t count() const noexcept
  {
    std::size_t n = 0;
    for ( auto w : words_ )
      n += std::popcount( w );
    return n;
  }

  bool empty() const noexcept
  {
    for ( auto w : words_ )
      if ( w )
        return false;
    return true;
  }

  CaseSet& operator&=( const CaseSet& other )
  {
    for ( std::size_t k = 0; k < words_.size(); ++k )
      words_[k] &= other.words_[k];
    return *this;
  }
  CaseSet& operator|=( const CaseSet& other )
  {
    for ( std::size_t k = 0; k < words_.size(); ++k )
      words_[k] |= other.words_[k];
    return *this;
  }
  /// Set difference.
  CaseSet& operator-=( const CaseSet& other )
  {
    for ( std::size_t k = 0; k < words_.size(); ++k )
      words_[k] &= ~other.words_[k];
    return *this;
  }

  friend CaseSet operator&( CaseSet a, const CaseSet& b ) { return a &= b; }
  friend CaseSet operator|( CaseSet a, const CaseSet& b ) { return a |= b; }
  friend CaseSet operator-( CaseSet a, const CaseSet& b ) { return a -= b; }
  friend bool operator==( const CaseSet&, const CaseSet& ) = default;

  /// |*this & other|
  std::size_t count_and( const CaseSet& other ) const noexcept
  {
    std::size_t n = 0;
    for ( std::size_t k = 0; k < words_.size(); ++k )
      n += std::popcount( words_[k] & other.words_[k] );
    return n;
  }

  /// |*this & other & ~excluded|
  std::size_t count_and_not( const CaseSet& other, const CaseSet& excluded ) const noexcept
  {
    std::size_t n = 0;
    for ( std::size_t k = 0; k < words_.size(); ++k )
      n += std::popcount( words_[k] & other.words_[k] & ~excluded.words_[k] );
    return n;
  }

  bool is_subset_of( const CaseSet& other ) const noexcept
  {
    for ( std::size_t k = 0; k < words_.size(); ++k )
      if ( words_[k] & ~other.words_[k] )
        return false;
    return true;
  }

  template<typename Fn>
  void for_each( Fn&& fn ) const
  {
    for ( std::size_t k = 0; k < words_.size(); ++k )
    {
      auto w = words_[k];
      while ( w )
      {
        fn( k * 64 + std::countr_zero( w ) );
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const
  {
    std::vector<std::size_t> out;
    out.reserve( count() );
    for_each( [&]( std::size_t i ) { out.push_back( i ); } );
    return out;
  }

private:
  void trim()
  {
    if ( size_ % 64 && !words_.empty() )
      words_.back() &= ( std::uint64_t{ 1 } << ( size_ % 64 ) ) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

} // namespace scpqca
