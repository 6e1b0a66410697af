function bump() {
  this.count = (this.count || 0) + 1;
  return this.count;
}
module.exports = bump;
