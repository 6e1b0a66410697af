define([], function() {
  var Board = function(width, height) {
    this.width = width;
    this.height = height;
  };

  Board.prototype.size = function() {
    return this.width * this.height;
  };

  Board.EMPTY = 0;

  return Board;
});
