function Cookie(options) {
  this.path = '/';
  this.maxAge = null;
  this.httpOnly = true;
  if (options) {
    for (var key in options) {
      this[key] = options[key];
    }
  }
  this.originalMaxAge = this.maxAge;
}

Cookie.prototype.serialize = function(name, val) {
  return name + '=' + val + '; Path=' + this.path;
};

module.exports = Cookie;
