var Board = function (width, height) {
  this.width = width;
  this.height = height;
};
Board.prototype.size = function () {
  return this.width * this.height;
};
var EMPTY = 0;
export {Board, EMPTY};
